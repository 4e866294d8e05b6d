// Copyright 2026 The CorrLDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "corrldp/core.hpp"

namespace corrldp {

// Coded dataset interchange format: a CSV with header attr_0,...,attr_{d-1}
// and one integer-coded row per user, plus a JSON sidecar ("<stem>.meta.json")
// holding at least the domain sizes. Both the synth and ingest commands emit
// it; the experiment runner consumes it.

std::string meta_path_for(const std::string& csv_path);

void write_dataset_csv(const Dataset& dataset, const std::string& csv_path);

// Reads a coded CSV. Domain sizes come from the sidecar when present and are
// inferred as max(code) + 1 (at least 2) otherwise.
Dataset read_dataset_csv(const std::string& csv_path);

}  // namespace corrldp
