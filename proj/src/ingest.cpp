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

#include "corrldp/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace corrldp {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == delimiter) {
      fields.push_back(field);
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(field);
  return fields;
}

struct WorkingTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> columns;  // column-major

  std::size_t row_count() const { return columns.empty() ? 0 : columns[0].size(); }
};

WorkingTable to_columns(const RawTable& table) {
  WorkingTable wt;
  wt.names = table.column_names;
  wt.columns.assign(table.column_count(), {});
  for (auto& col : wt.columns) col.reserve(table.row_count());
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) wt.columns[c].push_back(row[c]);
  }
  return wt;
}

std::size_t distinct_count(const std::vector<std::string>& column) {
  std::unordered_set<std::string> seen(column.begin(), column.end());
  return seen.size();
}

// Labels ordered by (count desc, label asc).
std::vector<std::pair<std::string, std::size_t>> ranked_labels(
    const std::vector<std::string>& column) {
  std::map<std::string, std::size_t> counts;
  for (const auto& label : column) ++counts[label];
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return ranked;
}

void select_columns(WorkingTable& wt, const std::vector<std::size_t>& indices) {
  WorkingTable out;
  for (std::size_t idx : indices) {
    if (idx >= wt.columns.size()) {
      throw RecipeError("select_columns index " + std::to_string(idx) +
                        " out of range (" + std::to_string(wt.columns.size()) +
                        " columns)");
    }
    out.names.push_back(wt.names[idx]);
    out.columns.push_back(std::move(wt.columns[idx]));
  }
  wt = std::move(out);
}

void drop_columns(WorkingTable& wt, const std::vector<std::size_t>& indices) {
  std::unordered_set<std::size_t> dropped(indices.begin(), indices.end());
  for (std::size_t idx : indices) {
    if (idx >= wt.columns.size()) {
      throw RecipeError("drop_columns index " + std::to_string(idx) +
                        " out of range");
    }
  }
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < wt.columns.size(); ++c) {
    if (!dropped.count(c)) kept.push_back(c);
  }
  select_columns(wt, kept);
}

void top_m_group(WorkingTable& wt, std::size_t m,
                 const std::vector<std::string>& missing_markers) {
  if (m < 1) throw RecipeError("top_m_group needs m >= 1");
  const std::unordered_set<std::string> missing(missing_markers.begin(),
                                                missing_markers.end());
  for (auto& column : wt.columns) {
    const auto ranked = ranked_labels(column);
    std::unordered_set<std::string> kept;
    for (std::size_t i = 0; i < ranked.size() && kept.size() < m; ++i) {
      if (missing.count(ranked[i].first)) continue;  // never promote a missing marker
      kept.insert(ranked[i].first);
    }
    for (auto& cell : column) {
      if (!kept.count(cell) && !missing.count(cell)) cell = "Other";
    }
  }
}

void drop_if_domain_leq(WorkingTable& wt, std::size_t t) {
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < wt.columns.size(); ++c) {
    if (distinct_count(wt.columns[c]) > t) kept.push_back(c);
  }
  if (kept.empty()) throw RecipeError("drop_if_domain_leq removed every column");
  select_columns(wt, kept);
}

Dataset frequency_rank_encode(WorkingTable& wt,
                              const std::vector<std::string>& missing_markers) {
  if (wt.columns.empty()) throw RecipeError("no columns left to encode");
  const std::unordered_set<std::string> missing(missing_markers.begin(),
                                                missing_markers.end());

  // Drop rows with a missing marker in any retained column.
  const std::size_t n_raw = wt.row_count();
  std::vector<bool> keep_row(n_raw, true);
  std::size_t n = 0;
  for (std::size_t r = 0; r < n_raw; ++r) {
    for (const auto& column : wt.columns) {
      if (missing.count(column[r])) {
        keep_row[r] = false;
        break;
      }
    }
    if (keep_row[r]) ++n;
  }
  if (n == 0) throw RecipeError("every row carries a missing value");

  Dataset data;
  data.records.assign(n, Record(wt.columns.size()));
  for (std::size_t c = 0; c < wt.columns.size(); ++c) {
    std::vector<std::string> retained;
    retained.reserve(n);
    for (std::size_t r = 0; r < n_raw; ++r) {
      if (keep_row[r]) retained.push_back(wt.columns[c][r]);
    }
    const auto ranked = ranked_labels(retained);
    if (ranked.size() < 2) {
      throw RecipeError("column " + wt.names[c] +
                        " has fewer than 2 labels after preprocessing");
    }
    std::unordered_map<std::string, std::uint32_t> code;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      code[ranked[i].first] = static_cast<std::uint32_t>(i);
    }
    data.domains.push_back(CategoricalDomain{static_cast<std::uint32_t>(ranked.size())});
    for (std::size_t r = 0; r < n; ++r) {
      data.records[r][c] = code[retained[r]];
    }
  }

  const std::uint32_t k = data.domains[0].size;
  for (const auto& dom : data.domains) {
    if (dom.size != k) {
      throw RecipeError("recipe produced heterogeneous domain sizes");
    }
  }
  validate_dataset(data);
  return data;
}

}  // namespace

RawTable load_csv(const std::string& path, bool has_header, char delimiter) {
  std::ifstream in(path);
  if (!in) throw IoError("could not open " + path);

  RawTable table;
  std::string line;
  std::size_t line_number = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_line(line, delimiter);
    if (width == 0) {
      width = fields.size();
      if (has_header) {
        table.column_names = std::move(fields);
        continue;
      }
      table.column_names.reserve(width);
      for (std::size_t c = 0; c < width; ++c) {
        table.column_names.push_back("col_" + std::to_string(c));
      }
    }
    if (fields.size() != width) {
      throw RaggedRows("line " + std::to_string(line_number) + " has " +
                           std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(width),
                       line_number);
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

char sniff_delimiter(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("could not open " + path);
  std::string line;
  while (std::getline(in, line) && line.empty()) {
  }
  const char candidates[] = {',', '\t', ';', ' '};
  char best = ',';
  std::size_t best_fields = 1;
  for (char c : candidates) {
    const std::size_t fields = split_line(line, c).size();
    if (fields > best_fields) {
      best_fields = fields;
      best = c;
    }
  }
  return best;
}

PreprocessRecipe PreprocessRecipe::clave() {
  PreprocessRecipe recipe;
  recipe.name = "clave";
  Step select{StepKind::kSelectColumns, {}, 0, 0};
  for (std::size_t c = 0; c < 16; ++c) select.columns.push_back(c);
  recipe.steps.push_back(select);
  recipe.steps.push_back(Step{StepKind::kFrequencyRankEncode, {}, 0, 0});
  return recipe;
}

PreprocessRecipe PreprocessRecipe::nursery() {
  PreprocessRecipe recipe;
  recipe.name = "nursery";
  recipe.steps.push_back(Step{StepKind::kDropColumns, {5}, 0, 0});  // finance
  recipe.steps.push_back(Step{StepKind::kTopMGroup, {}, 2, 0});
  recipe.steps.push_back(Step{StepKind::kFrequencyRankEncode, {}, 0, 0});
  return recipe;
}

PreprocessRecipe PreprocessRecipe::mushroom() {
  PreprocessRecipe recipe;
  recipe.name = "mushroom";
  recipe.steps.push_back(Step{StepKind::kDropIfDomainLeq, {}, 0, 5});
  recipe.steps.push_back(Step{StepKind::kTopMGroup, {}, 5, 0});
  recipe.steps.push_back(Step{StepKind::kFrequencyRankEncode, {}, 0, 0});
  return recipe;
}

PreprocessRecipe PreprocessRecipe::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("could not open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw RecipeError("could not parse recipe json: " + std::string(e.what()));
  }

  PreprocessRecipe recipe;
  recipe.name = doc.value("name", std::string("custom"));
  if (doc.contains("missing_markers")) {
    recipe.missing_markers = doc["missing_markers"].get<std::vector<std::string>>();
  }
  if (!doc.contains("steps") || !doc["steps"].is_array()) {
    throw RecipeError("recipe json needs a steps array");
  }
  for (const auto& step_doc : doc["steps"]) {
    const std::string op = step_doc.value("op", std::string());
    Step step{StepKind::kFrequencyRankEncode, {}, 0, 0};
    if (op == "select_columns") {
      step.kind = StepKind::kSelectColumns;
      step.columns = step_doc.at("columns").get<std::vector<std::size_t>>();
    } else if (op == "drop_columns") {
      step.kind = StepKind::kDropColumns;
      step.columns = step_doc.at("columns").get<std::vector<std::size_t>>();
    } else if (op == "top_m_group") {
      step.kind = StepKind::kTopMGroup;
      step.m = step_doc.at("m").get<std::size_t>();
    } else if (op == "drop_if_domain_leq") {
      step.kind = StepKind::kDropIfDomainLeq;
      step.t = step_doc.at("t").get<std::size_t>();
    } else if (op == "frequency_rank_encode") {
      step.kind = StepKind::kFrequencyRankEncode;
    } else {
      throw RecipeError("unknown recipe step: " + op);
    }
    recipe.steps.push_back(std::move(step));
  }
  return recipe;
}

Dataset apply_recipe(const RawTable& table, const PreprocessRecipe& recipe) {
  if (recipe.steps.empty() ||
      recipe.steps.back().kind != PreprocessRecipe::StepKind::kFrequencyRankEncode) {
    throw RecipeError("recipe must end with frequency_rank_encode");
  }
  WorkingTable wt = to_columns(table);
  for (const auto& step : recipe.steps) {
    switch (step.kind) {
      case PreprocessRecipe::StepKind::kSelectColumns:
        select_columns(wt, step.columns);
        break;
      case PreprocessRecipe::StepKind::kDropColumns:
        drop_columns(wt, step.columns);
        break;
      case PreprocessRecipe::StepKind::kTopMGroup:
        top_m_group(wt, step.m, recipe.missing_markers);
        break;
      case PreprocessRecipe::StepKind::kDropIfDomainLeq:
        drop_if_domain_leq(wt, step.t);
        break;
      case PreprocessRecipe::StepKind::kFrequencyRankEncode:
        return frequency_rank_encode(wt, recipe.missing_markers);
    }
  }
  throw RecipeError("recipe did not encode");  // unreachable
}

MarginalTable true_marginals(const Dataset& dataset) {
  validate_dataset(dataset);
  MarginalTable table;
  table.freqs.reserve(dataset.attribute_count());
  for (const auto& dom : dataset.domains) {
    table.freqs.emplace_back(dom.size, 0.0);
  }
  for (const Record& row : dataset.records) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      table.freqs[j][row[j]] += 1.0;
    }
  }
  const double n = static_cast<double>(dataset.user_count());
  for (auto& row : table.freqs) {
    for (auto& x : row) x /= n;
  }
  return table;
}

}  // namespace corrldp
