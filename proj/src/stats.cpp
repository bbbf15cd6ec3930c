#include "polybench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "polybench/error.hpp"

namespace polybench {

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidSamples, "pearson inputs differ in length");
  const std::size_t n = a.size();
  if (n < 3) throw Error(ErrorKind::InvalidSamples, "pearson needs at least three observations");
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa / static_cast<double>(n) < 1e-300 || sbb / static_cast<double>(n) < 1e-300) {
    throw Error(ErrorKind::ConstantColumn, "pearson input has zero variance");
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

CorrelationClass classify(double rho) {
  if (rho > 0.7) return CorrelationClass::StrongPositive;
  if (rho > 0.3) return CorrelationClass::WeakPositive;
  if (rho >= -0.3) return CorrelationClass::None;
  if (rho >= -0.7) return CorrelationClass::WeakNegative;
  return CorrelationClass::StrongNegative;
}

std::string_view class_label(CorrelationClass c) {
  switch (c) {
    case CorrelationClass::StrongPositive: return "strong+";
    case CorrelationClass::WeakPositive: return "weak+";
    case CorrelationClass::None: return "none";
    case CorrelationClass::WeakNegative: return "weak-";
    case CorrelationClass::StrongNegative: return "strong-";
  }
  return "none";
}

ObservationTable::ObservationTable(std::vector<std::string> ids) : ids_(std::move(ids)) {}

void ObservationTable::add_column(std::string name, std::vector<double> values) {
  if (values.size() != ids_.size()) {
    throw Error(ErrorKind::InvalidParameter, "column " + name + " has the wrong number of rows");
  }
  if (has_column(name)) throw Error(ErrorKind::InvalidParameter, "duplicate column " + name);
  names_.push_back(std::move(name));
  columns_.push_back(std::move(values));
}

bool ObservationTable::has_column(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const std::vector<double>& ObservationTable::column(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error(ErrorKind::InvalidParameter, "no column " + std::string(name));
  return columns_[static_cast<std::size_t>(it - names_.begin())];
}

ObservationTable join(const ObservationTable& left, const ObservationTable& right) {
  if (left.rows() != right.rows()) {
    throw Error(ErrorKind::MissingJoin, "tables hold " + std::to_string(left.rows()) + " and " +
                                            std::to_string(right.rows()) + " rows");
  }
  std::map<std::string, std::size_t> where;
  for (std::size_t i = 0; i < right.rows(); ++i) where.emplace(right.ids()[i], i);
  std::vector<std::size_t> order(left.rows());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    const auto it = where.find(left.ids()[i]);
    if (it == where.end()) throw Error(ErrorKind::MissingJoin, "row " + left.ids()[i] + " has no partner");
    order[i] = it->second;
  }
  ObservationTable out(left.ids());
  for (const auto& name : left.names()) out.add_column(name, left.column(name));
  for (const auto& name : right.names()) {
    const auto& src = right.column(name);
    std::vector<double> values(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) values[i] = src[order[i]];
    out.add_column(name, std::move(values));
  }
  return out;
}

CorrelationMatrix correlation_matrix(const ObservationTable& table, const std::vector<std::string>& columns) {
  return correlation_matrix(table, columns, columns);
}

CorrelationMatrix correlation_matrix(const ObservationTable& table, const std::vector<std::string>& rows,
                                     const std::vector<std::string>& cols) {
  std::vector<std::string> used(rows);
  for (const auto& c : cols) {
    if (std::find(used.begin(), used.end(), c) == used.end()) used.push_back(c);
  }
  std::vector<bool> keep(table.rows(), true);
  for (const auto& name : used) {
    const auto& col = table.column(name);
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (std::isnan(col[i])) keep[i] = false;
    }
  }
  std::map<std::string, std::vector<double>> clean;
  for (const auto& name : used) {
    const auto& col = table.column(name);
    auto& dst = clean[name];
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (keep[i]) dst.push_back(col[i]);
    }
  }

  CorrelationMatrix m;
  m.row_labels = rows;
  m.col_labels = cols;
  m.used_rows = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
  m.dropped_rows = table.rows() - m.used_rows;
  m.rho.assign(rows.size(), std::vector<double>(cols.size(), 0.0));
  m.classes.assign(rows.size(), std::vector<CorrelationClass>(cols.size(), CorrelationClass::None));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      double rho = 0.0;
      try {
        rho = pearson(clean[rows[r]], clean[cols[c]]);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ConstantColumn) throw;
        const auto& a = clean[rows[r]];
        const bool row_flat = std::all_of(a.begin(), a.end(), [&](double v) { return v == a.front(); });
        throw Error(ErrorKind::ConstantColumn, "column " + (row_flat ? rows[r] : cols[c]) + " is constant");
      }
      m.rho[r][c] = rho;
      m.classes[r][c] = classify(rho);
    }
  }
  return m;
}

void write_csv(std::ostream& os, const CorrelationMatrix& m) {
  os << "label";
  for (const auto& c : m.col_labels) os << ',' << c;
  os << '\n';
  char buf[32];
  for (std::size_t r = 0; r < m.row_labels.size(); ++r) {
    os << m.row_labels[r];
    for (double v : m.rho[r]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << ',' << buf;
    }
    os << '\n';
  }
}

nlohmann::json to_json(const CorrelationMatrix& m) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& row : m.classes) {
    nlohmann::json line = nlohmann::json::array();
    for (CorrelationClass c : row) line.push_back(std::string(class_label(c)));
    classes.push_back(std::move(line));
  }
  return {{"labels", m.col_labels},  {"row_labels", m.row_labels},     {"rho", m.rho},
          {"class", classes},        {"used_rows", m.used_rows},       {"dropped_rows", m.dropped_rows}};
}

}  // namespace polybench
