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

#include <cstdint>
#include <string>
#include <vector>

#include "corrldp/core.hpp"

namespace corrldp {

// A rectangular table of raw string cells.
struct RawTable {
  std::vector<std::string> column_names;
  std::vector<std::vector<std::string>> rows;

  std::size_t row_count() const { return rows.size(); }
  std::size_t column_count() const { return column_names.size(); }
};

// Reads a delimited text file. With has_header the first row is consumed as
// column names; otherwise columns are named col_0, col_1, ...
RawTable load_csv(const std::string& path, bool has_header, char delimiter = ',');

// Picks the delimiter among {',', '\t', ';', ' '} that splits the first line
// into the most fields.
char sniff_delimiter(const std::string& path);

// Ordered preprocessing steps turning a raw table into an integer-coded
// dataset with one uniform domain size. frequency_rank_encode must be the
// final step; beforehand, rows carrying a missing marker in any retained
// column are dropped.
struct PreprocessRecipe {
  enum class StepKind {
    kSelectColumns,    // keep the listed columns, in the listed order
    kDropColumns,      // remove the listed columns
    kTopMGroup,        // keep each column's m most frequent labels, rest -> "Other"
    kDropIfDomainLeq,  // remove columns with at most t distinct labels
    kFrequencyRankEncode,
  };
  struct Step {
    StepKind kind;
    std::vector<std::size_t> columns;  // kSelectColumns / kDropColumns
    std::size_t m = 0;                 // kTopMGroup
    std::size_t t = 0;                 // kDropIfDomainLeq
  };

  std::vector<Step> steps;
  std::vector<std::string> missing_markers{"?", ""};
  std::string name = "custom";

  static PreprocessRecipe clave();
  static PreprocessRecipe nursery();
  static PreprocessRecipe mushroom();
  static PreprocessRecipe from_json_file(const std::string& path);
};

// Applies the recipe. Codes are assigned per attribute by descending label
// frequency, ties broken lexicographically on the label.
Dataset apply_recipe(const RawTable& table, const PreprocessRecipe& recipe);

// Exact empirical frequencies; normalized by construction.
MarginalTable true_marginals(const Dataset& dataset);

}  // namespace corrldp
