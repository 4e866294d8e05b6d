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

#include "corrldp/dataset_io.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "corrldp/ingest.hpp"

namespace corrldp {

std::string meta_path_for(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".meta.json");
  return p.string();
}

void write_dataset_csv(const Dataset& dataset, const std::string& csv_path) {
  validate_dataset(dataset);
  std::ofstream out(csv_path);
  if (!out) throw IoError("could not write " + csv_path);
  for (std::size_t j = 0; j < dataset.attribute_count(); ++j) {
    out << (j ? "," : "") << "attr_" << j;
  }
  out << "\n";
  for (const Record& row : dataset.records) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? "," : "") << row[j];
    }
    out << "\n";
  }
  if (!out) throw IoError("failed while writing " + csv_path);
}

Dataset read_dataset_csv(const std::string& csv_path) {
  const RawTable raw = load_csv(csv_path, /*has_header=*/true);
  Dataset data;
  const std::size_t d = raw.column_count();
  data.records.reserve(raw.row_count());
  std::vector<std::uint32_t> max_code(d, 0);
  for (std::size_t r = 0; r < raw.row_count(); ++r) {
    Record row(d);
    for (std::size_t c = 0; c < d; ++c) {
      try {
        const unsigned long value = std::stoul(raw.rows[r][c]);
        row[c] = static_cast<std::uint32_t>(value);
      } catch (const std::exception&) {
        throw IoError("non-integer cell at data row " + std::to_string(r + 1) +
                      ", column " + std::to_string(c) + " of " + csv_path);
      }
      max_code[c] = std::max(max_code[c], row[c]);
    }
    data.records.push_back(std::move(row));
  }

  data.domains.assign(d, CategoricalDomain{});
  const std::string meta_path = meta_path_for(csv_path);
  bool have_meta = false;
  if (std::filesystem::exists(meta_path)) {
    std::ifstream meta_in(meta_path);
    nlohmann::json meta;
    try {
      meta_in >> meta;
      if (meta.contains("domains")) {
        const auto sizes = meta["domains"].get<std::vector<std::uint32_t>>();
        if (sizes.size() == d) {
          for (std::size_t c = 0; c < d; ++c) data.domains[c].size = sizes[c];
          have_meta = true;
        }
      }
    } catch (const nlohmann::json::exception&) {
      have_meta = false;
    }
  }
  if (!have_meta) {
    for (std::size_t c = 0; c < d; ++c) {
      data.domains[c].size = std::max(2u, max_code[c] + 1);
    }
  }
  validate_dataset(data);
  return data;
}

}  // namespace corrldp
