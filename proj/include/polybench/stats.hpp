#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace polybench {

/// Centered Pearson coefficient with means (1/n) sum, clamped to [-1, 1].
/// Needs n >= 3 and two non-constant inputs.
double pearson(std::span<const double> a, std::span<const double> b);

enum class CorrelationClass { StrongPositive, WeakPositive, None, WeakNegative, StrongNegative };

/// strong when |rho| in (0.7, 1], weak when |rho| in (0.3, 0.7], none otherwise.
CorrelationClass classify(double rho);
std::string_view class_label(CorrelationClass c);  ///< "strong+", "weak+", "none", "weak-", "strong-"

/// Named real columns keyed by a row id.
class ObservationTable {
 public:
  explicit ObservationTable(std::vector<std::string> ids = {});

  std::size_t rows() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<std::string>& names() const { return names_; }

  void add_column(std::string name, std::vector<double> values);
  bool has_column(std::string_view name) const;
  const std::vector<double>& column(std::string_view name) const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
};

/// Columns of `right` appended to `left`, rows matched by id. Throws
/// MissingJoin unless both tables hold the same id set.
ObservationTable join(const ObservationTable& left, const ObservationTable& right);

struct CorrelationMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<double>> rho;
  std::vector<std::vector<CorrelationClass>> classes;
  std::size_t used_rows = 0;
  std::size_t dropped_rows = 0;  ///< rows with a NaN in an analyzed column
};

/// Square matrix over `columns`.
CorrelationMatrix correlation_matrix(const ObservationTable& table, const std::vector<std::string>& columns);
/// Rectangular matrix, rows x cols.
CorrelationMatrix correlation_matrix(const ObservationTable& table, const std::vector<std::string>& rows,
                                     const std::vector<std::string>& cols);

/// Header `label,<col>...`, then one line per row label.
void write_csv(std::ostream& os, const CorrelationMatrix& m);
/// {labels, row_labels, rho, class, used_rows, dropped_rows}.
nlohmann::json to_json(const CorrelationMatrix& m);

}  // namespace polybench
