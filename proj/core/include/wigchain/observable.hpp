#pragma once

#include <memory>

#include "wigchain/types.hpp"

namespace wigchain {

// Deterministic test matrix with its cached normalized trace and
// Hilbert-Schmidt norm <|A|^2>^{1/2} = (Tr A*A / N)^{1/2}.
class ObservableMatrix {
 public:
  explicit ObservableMatrix(Matrix data);

  const Matrix& data() const { return data_; }
  int dim() const { return static_cast<int>(data_.rows()); }
  cplx trace_avg() const { return trace_avg_; }
  double hs_norm() const { return hs_norm_; }
  bool traceless() const { return traceless_; }

  // A - <A> I
  ObservableMatrix traceless_part() const;
  ObservableMatrix adjoint() const;
  ObservableMatrix transpose() const;

 private:
  Matrix data_;
  cplx trace_avg_;
  double hs_norm_;
  bool traceless_;
};

using ObservablePtr = std::shared_ptr<const ObservableMatrix>;

inline ObservablePtr make_observable(Matrix data) {
  return std::make_shared<const ObservableMatrix>(std::move(data));
}

} // namespace wigchain
