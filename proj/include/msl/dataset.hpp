#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "msl/common.hpp"

namespace msl {

//! Minimal RFC-4180-style CSV table: comma separated, double quotes may wrap
//! fields and escape embedded quotes by doubling.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (header[j] == name) return static_cast<int>(j);
    }
    return -1;
  }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c == '\r') {
      // tolerate CRLF endings
    } else {
      cur.push_back(c);
    }
  }
  require(!quoted, ErrorCode::ParseError,
          "unterminated quoted field at line " + std::to_string(line_no));
  fields.push_back(cur);
  return fields;
}

inline bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stod(s, &pos);
  } catch (...) {
    return false;
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  return pos == s.size();
}

}  // namespace detail

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::ParseError, "cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      table.header = detail::split_csv_line(line, line_no);
      continue;
    }
    if (line.empty()) continue;
    auto fields = detail::split_csv_line(line, line_no);
    require(fields.size() == table.header.size(), ErrorCode::ParseError,
            "row " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                " fields, expected " + std::to_string(table.header.size()));
    table.rows.push_back(std::move(fields));
  }
  require(!table.header.empty(), ErrorCode::ParseError, "'" + path + "' is empty");
  return table;
}

//! Labeled two-group sample. Label 1 marks the diseased group.
struct Dataset {
  Matrix features;
  std::vector<int> labels;
  std::vector<std::string> feature_names;
  std::string provenance;
  int dropped_missing = 0;

  int n_diseased() const {
    int n = 0;
    for (int v : labels) n += v;
    return n;
  }
  int m_healthy() const { return static_cast<int>(labels.size()) - n_diseased(); }

  std::pair<Matrix, Matrix> split() const {
    const int n = n_diseased(), m = m_healthy();
    Matrix X(n, features.cols()), Y(m, features.cols());
    int xi = 0, yi = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == 1) X.row(xi++) = features.row(static_cast<Eigen::Index>(i));
      else Y.row(yi++) = features.row(static_cast<Eigen::Index>(i));
    }
    return {std::move(X), std::move(Y)};
  }

  void validate() const {
    require(n_diseased() >= 2 && m_healthy() >= 2, ErrorCode::EmptyAfterFilter,
            "need at least 2 observations per group after filtering");
    require(features.allFinite(), ErrorCode::ParseError, "non-finite feature values");
  }
};

//! Schema knobs for the urinary-biomarker CSV. Defaults target the public
//! pancreatic-cancer file: keep one collection site, treat benign pancreatic
//! conditions as non-diseased, and scale LYVE1 by 100 to align magnitudes.
struct PancreaticIngestOptions {
  std::string cohort_column = "sample_origin";
  std::string cohort_value = "BPTB";
  std::string diagnosis_column = "diagnosis";
  std::map<std::string, int> group_mapping = {{"1", 0}, {"2", 0}, {"3", 1}};
  std::vector<std::string> biomarker_columns = {"LYVE1", "REG1B", "TFF1"};
  std::vector<double> biomarker_scale = {100.0, 1.0, 1.0};
};

inline Dataset ingest_pancreatic_csv(const std::string& path,
                                     const PancreaticIngestOptions& opts = {}) {
  const CsvTable table = read_csv(path);

  auto need_column = [&](const std::string& name) {
    const int j = table.column(name);
    require(j >= 0, ErrorCode::MissingColumn, "missing column '" + name + "'");
    return j;
  };
  const int cohort_col = need_column(opts.cohort_column);
  const int diag_col = need_column(opts.diagnosis_column);
  std::vector<int> marker_cols;
  for (const auto& name : opts.biomarker_columns) marker_cols.push_back(need_column(name));

  std::vector<std::vector<double>> feature_rows;
  std::vector<int> labels;
  int dropped = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row[static_cast<std::size_t>(cohort_col)] != opts.cohort_value) continue;

    const std::string& diag = row[static_cast<std::size_t>(diag_col)];
    const auto it = opts.group_mapping.find(diag);
    require(it != opts.group_mapping.end(), ErrorCode::ParseError,
            "row " + std::to_string(r + 2) + ": unknown diagnosis value '" + diag + "'");

    std::vector<double> values(marker_cols.size());
    bool missing = false;
    for (std::size_t k = 0; k < marker_cols.size(); ++k) {
      const std::string& cell = row[static_cast<std::size_t>(marker_cols[k])];
      if (cell.empty()) {
        missing = true;
        break;
      }
      double v = 0.0;
      require(detail::parse_double(cell, v), ErrorCode::ParseError,
              "row " + std::to_string(r + 2) + ": cannot parse '" + cell + "' in column " +
                  opts.biomarker_columns[k]);
      values[k] = v * opts.biomarker_scale[k];
    }
    if (missing) {
      ++dropped;
      continue;
    }
    feature_rows.push_back(std::move(values));
    labels.push_back(it->second);
  }

  require(!feature_rows.empty(), ErrorCode::EmptyAfterFilter,
          "no rows left after cohort filtering");

  Dataset ds;
  ds.features.resize(static_cast<Eigen::Index>(feature_rows.size()),
                     static_cast<Eigen::Index>(marker_cols.size()));
  for (std::size_t i = 0; i < feature_rows.size(); ++i) {
    for (std::size_t j = 0; j < feature_rows[i].size(); ++j) {
      ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          feature_rows[i][j];
    }
  }
  ds.labels = std::move(labels);
  ds.feature_names = opts.biomarker_columns;
  for (std::size_t k = 0; k < ds.feature_names.size(); ++k) {
    if (opts.biomarker_scale[k] != 1.0) {
      std::ostringstream tag;
      tag << ds.feature_names[k] << "_x" << opts.biomarker_scale[k];
      ds.feature_names[k] = tag.str();
    }
  }
  ds.dropped_missing = dropped;
  ds.provenance = path + " [cohort " + opts.cohort_value + "]";
  ds.validate();
  return ds;
}

//! Generic labeled CSV: one 0/1 label column, every other numeric column (or
//! an explicit list) is a feature. Rows with empty feature cells are dropped
//! and counted.
inline Dataset load_labeled_csv(const std::string& path, const std::string& label_column,
                                std::vector<std::string> feature_columns = {}) {
  const CsvTable table = read_csv(path);
  const int label_col = table.column(label_column);
  require(label_col >= 0, ErrorCode::MissingColumn,
          "missing label column '" + label_column + "'");

  if (feature_columns.empty()) {
    for (const auto& name : table.header) {
      if (name != label_column) feature_columns.push_back(name);
    }
  }
  std::vector<int> cols;
  for (const auto& name : feature_columns) {
    const int j = table.column(name);
    require(j >= 0, ErrorCode::MissingColumn, "missing feature column '" + name + "'");
    cols.push_back(j);
  }

  std::vector<std::vector<double>> feature_rows;
  std::vector<int> labels;
  int dropped = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string& lab = row[static_cast<std::size_t>(label_col)];
    require(lab == "0" || lab == "1", ErrorCode::ParseError,
            "row " + std::to_string(r + 2) + ": label must be 0 or 1, got '" + lab + "'");
    std::vector<double> values(cols.size());
    bool missing = false;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const std::string& cell = row[static_cast<std::size_t>(cols[k])];
      if (cell.empty()) {
        missing = true;
        break;
      }
      require(detail::parse_double(cell, values[k]), ErrorCode::ParseError,
              "row " + std::to_string(r + 2) + ": cannot parse '" + cell + "'");
    }
    if (missing) {
      ++dropped;
      continue;
    }
    feature_rows.push_back(std::move(values));
    labels.push_back(lab == "1" ? 1 : 0);
  }
  require(!feature_rows.empty(), ErrorCode::EmptyAfterFilter, "no usable rows");

  Dataset ds;
  ds.features.resize(static_cast<Eigen::Index>(feature_rows.size()),
                     static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < feature_rows.size(); ++i) {
    for (std::size_t j = 0; j < feature_rows[i].size(); ++j) {
      ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          feature_rows[i][j];
    }
  }
  ds.labels = std::move(labels);
  ds.feature_names = feature_columns;
  ds.dropped_missing = dropped;
  ds.provenance = path;
  ds.validate();
  return ds;
}

}  // namespace msl
