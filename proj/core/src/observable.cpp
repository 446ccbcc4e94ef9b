#include "wigchain/observable.hpp"

#include <stdexcept>

namespace wigchain {

ObservableMatrix::ObservableMatrix(Matrix data) : data_(std::move(data)) {
  if (data_.rows() != data_.cols() || data_.rows() < 1)
    throw std::invalid_argument("ObservableMatrix: expected a square matrix");
  const double n = static_cast<double>(data_.rows());
  trace_avg_ = data_.trace() / n;
  hs_norm_ = std::sqrt(data_.squaredNorm() / n);
  traceless_ = std::abs(trace_avg_) <= 1e-12 * std::max(hs_norm_, 1e-300);
}

ObservableMatrix ObservableMatrix::traceless_part() const {
  Matrix out = data_;
  out.diagonal().array() -= trace_avg_;
  return ObservableMatrix(std::move(out));
}

ObservableMatrix ObservableMatrix::adjoint() const {
  return ObservableMatrix(data_.adjoint());
}

ObservableMatrix ObservableMatrix::transpose() const {
  return ObservableMatrix(data_.transpose());
}

} // namespace wigchain
