#include "poisskit/linalg.hpp"

#include <sstream>

namespace poisskit {

QMatrix row_space(const QMatrix& rows) {
  QMatrix m = rows;
  auto pivots = rref(m);
  QMatrix out(pivots.size(), m.cols(), Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

std::vector<QVector> column_basis(const QMatrix& m) {
  QMatrix r = m;
  auto pivots = rref(r);
  std::vector<QVector> out;
  for (auto p : pivots) out.push_back(m.col(p));
  return out;
}

bool same_row_space(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.cols()) return false;
  return row_space(a) == row_space(b);
}

QMatrix evaluate(const RMatrix& m, std::span<const Rational> point) {
  QMatrix out(m.rows(), m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = eval(m(i, j), point);
  return out;
}

std::string to_string(const QMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j).get_str();
    }
  }
  os << ']';
  return os.str();
}

std::string to_string(const RMatrix& m, const Chart& chart) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << to_string(m(i, j), chart);
    }
  }
  os << ']';
  return os.str();
}

}  // namespace poisskit
