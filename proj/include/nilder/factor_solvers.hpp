#ifndef NILDER_FACTOR_SOLVERS_HPP
#define NILDER_FACTOR_SOLVERS_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "nilder/matrix.hpp"

namespace nilder {

struct Shape {
  std::size_t rows;
  std::size_t cols;
  friend bool operator==(const Shape&, const Shape&) = default;
};

/// A linear map M_{in} -> M_{out} stored by its action on standard units. Units are enumerated
/// row-major; column u of `action` holds the row-major entries of the image of unit u.
class BlockLinMap {
 public:
  BlockLinMap(Shape in, Shape out, Mat action);
  static BlockLinMap from_function(Field field, Shape in, Shape out,
                                   const std::function<Mat(const Mat&)>& fn);

  Shape in_shape() const { return in_; }
  Shape out_shape() const { return out_; }
  const Mat& action() const { return action_; }
  Field field() const { return action_.field(); }

  Mat operator()(const Mat& input) const;
  /// Image of the 1-based unit E_{pq} of the input space.
  Mat unit_image(std::size_t p, std::size_t q) const;

 private:
  Shape in_;
  Shape out_;
  Mat action_;
};

/// The functional equation of a solver fails on a pair of standard units. Units are
/// reported 1-based as (row, col) of the first and second factor.
class HypothesisViolation : public std::invalid_argument {
 public:
  HypothesisViolation(std::string lemma, std::size_t a_row, std::size_t a_col, std::size_t b_row,
                      std::size_t b_col);

  const std::string& lemma() const { return lemma_; }
  std::size_t first_row() const { return a_row_; }
  std::size_t first_col() const { return a_col_; }
  std::size_t second_row() const { return b_row_; }
  std::size_t second_col() const { return b_col_; }

 private:
  std::string lemma_;
  std::size_t a_row_, a_col_, b_row_, b_col_;
};

/// A recovered witness failed the conclusion although the hypothesis held.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// φ: M_{mp} -> M_{mq}, ϕ: M_{np} -> M_{nq} with φ(AB) = Aϕ(B).
/// Returns the p×q matrix X with φ(C) = CX and ϕ(D) = DX.
Mat solve_right_factor(const BlockLinMap& phi, const BlockLinMap& varphi);

/// φ: M_{mp} -> M_{np}, ϕ: M_{mq} -> M_{nq} with φ(BA) = ϕ(B)A.
/// Returns the n×m matrix X with φ(C) = XC and ϕ(D) = XD.
Mat solve_left_factor(const BlockLinMap& phi, const BlockLinMap& varphi);

/// φ: M_{mp} -> M_{mq}, ϕ: M_{qn} -> M_{pn} with φ(A)B = Aϕ(B).
/// Returns the p×q matrix X with φ(C) = CX and ϕ(D) = XD.
Mat solve_balanced(const BlockLinMap& phi, const BlockLinMap& varphi);

struct SandwichSolution {
  Mat x;  // p×p
  Mat y;  // r×r
  Mat z;  // q×q
};

/// f: M_{pr}, g: M_{pq}, h: M_{qr} (each to itself) with f(AB) = g(A)B + Ah(B).
/// Returns X, Y, Z with f(C) = XC + CY, g(A) = XA + AZ, h(B) = BY - ZB. The scalar gauge
/// is fixed by subtracting f(E_{11})_{11} from the diagonal of X.
SandwichSolution solve_sandwich(const BlockLinMap& f, const BlockLinMap& g, const BlockLinMap& h);

}  // namespace nilder

#endif  // NILDER_FACTOR_SOLVERS_HPP
