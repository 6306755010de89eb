#include "nilder/factor_solvers.hpp"

namespace nilder {

namespace {

std::string shape_str(Shape s) { return std::to_string(s.rows) + "x" + std::to_string(s.cols); }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Loops over all pairs of standard units E^{(ab)}_{ij}, E^{(cd)}_{kl}.
template <class Fn>
void for_unit_pairs(Shape first, Shape second, Fn&& fn) {
  for (std::size_t i = 1; i <= first.rows; ++i)
    for (std::size_t j = 1; j <= first.cols; ++j)
      for (std::size_t k = 1; k <= second.rows; ++k)
        for (std::size_t l = 1; l <= second.cols; ++l) fn(i, j, k, l);
}

template <class Fn>
void for_units(Shape s, Fn&& fn) {
  for (std::size_t i = 1; i <= s.rows; ++i)
    for (std::size_t j = 1; j <= s.cols; ++j) fn(i, j);
}

}  // namespace

BlockLinMap::BlockLinMap(Shape in, Shape out, Mat action)
    : in_(in), out_(out), action_(std::move(action)) {
  require(in_.rows > 0 && in_.cols > 0 && out_.rows > 0 && out_.cols > 0,
          "block map shapes must be positive");
  require(action_.rows() == out_.rows * out_.cols && action_.cols() == in_.rows * in_.cols,
          "action of a " + shape_str(in_) + " -> " + shape_str(out_) + " map must be " +
              std::to_string(out_.rows * out_.cols) + "x" + std::to_string(in_.rows * in_.cols));
}

BlockLinMap BlockLinMap::from_function(Field field, Shape in, Shape out,
                                       const std::function<Mat(const Mat&)>& fn) {
  Mat action(field, out.rows * out.cols, in.rows * in.cols);
  for_units(in, [&](std::size_t p, std::size_t q) {
    Mat image = fn(unit_matrix(field, in.rows, in.cols, p, q));
    require(image.rows() == out.rows && image.cols() == out.cols,
            "function returned a " + std::to_string(image.rows()) + "x" +
                std::to_string(image.cols()) + " matrix, expected " + shape_str(out));
    auto col = (p - 1) * in.cols + (q - 1);
    for (std::size_t k = 0; k < image.entries().size(); ++k) action(k, col) = image.entries()[k];
  });
  return BlockLinMap(in, out, std::move(action));
}

Mat BlockLinMap::operator()(const Mat& input) const {
  require(input.rows() == in_.rows && input.cols() == in_.cols,
          "block map expects a " + shape_str(in_) + " input");
  Mat image = action_ * Mat::column(input.entries());
  Mat out(field(), out_.rows, out_.cols);
  for (std::size_t r = 0; r < out_.rows; ++r)
    for (std::size_t c = 0; c < out_.cols; ++c) out(r, c) = image(r * out_.cols + c, 0);
  return out;
}

Mat BlockLinMap::unit_image(std::size_t p, std::size_t q) const {
  return (*this)(unit_matrix(field(), in_.rows, in_.cols, p, q));
}

HypothesisViolation::HypothesisViolation(std::string lemma, std::size_t a_row, std::size_t a_col,
                                         std::size_t b_row, std::size_t b_col)
    : std::invalid_argument(lemma + ": hypothesis fails on units E_(" + std::to_string(a_row) +
                            "," + std::to_string(a_col) + ") and E_(" + std::to_string(b_row) +
                            "," + std::to_string(b_col) + ")"),
      lemma_(std::move(lemma)),
      a_row_(a_row),
      a_col_(a_col),
      b_row_(b_row),
      b_col_(b_col) {}

Mat solve_right_factor(const BlockLinMap& phi, const BlockLinMap& varphi) {
  const auto m = phi.in_shape().rows, p = phi.in_shape().cols, q = phi.out_shape().cols;
  const auto n = varphi.in_shape().rows;
  require(phi.out_shape() == Shape{m, q} && varphi.in_shape() == Shape{n, p} &&
              varphi.out_shape() == Shape{n, q},
          "solve_right_factor: expected φ: M_mp -> M_mq and ϕ: M_np -> M_nq");
  const Field field = phi.field();

  for_unit_pairs({m, n}, {n, p}, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Mat a = unit_matrix(field, m, n, i, j);
    Mat b = unit_matrix(field, n, p, k, l);
    if (!(phi(a * b) == a * varphi(b))) throw HypothesisViolation("phi(AB) = A varphi(B)", i, j, k, l);
  });

  // E_{11} B ranges over the first row of M_mp, so row k of X is the first row of φ(E_{1k}).
  Mat x(field, p, q);
  for (std::size_t k = 1; k <= p; ++k) {
    Mat image = phi.unit_image(1, k);
    for (std::size_t c = 0; c < q; ++c) x(k - 1, c) = image(0, c);
  }

  for_units({m, p}, [&](std::size_t i, std::size_t j) {
    Mat c = unit_matrix(field, m, p, i, j);
    if (!(phi(c) == c * x)) throw InternalConsistencyError("solve_right_factor: φ(C) != CX");
  });
  for_units({n, p}, [&](std::size_t i, std::size_t j) {
    Mat d = unit_matrix(field, n, p, i, j);
    if (!(varphi(d) == d * x)) throw InternalConsistencyError("solve_right_factor: ϕ(D) != DX");
  });
  return x;
}

Mat solve_left_factor(const BlockLinMap& phi, const BlockLinMap& varphi) {
  const auto m = phi.in_shape().rows, p = phi.in_shape().cols, n = phi.out_shape().rows;
  const auto q = varphi.in_shape().cols;
  require(phi.out_shape() == Shape{n, p} && varphi.in_shape() == Shape{m, q} &&
              varphi.out_shape() == Shape{n, q},
          "solve_left_factor: expected φ: M_mp -> M_np and ϕ: M_mq -> M_nq");
  const Field field = phi.field();

  // Pairs are (B, A) with B in M_mq, A in M_qp.
  for_unit_pairs({m, q}, {q, p}, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Mat b = unit_matrix(field, m, q, i, j);
    Mat a = unit_matrix(field, q, p, k, l);
    if (!(phi(b * a) == varphi(b) * a)) throw HypothesisViolation("phi(BA) = varphi(B) A", i, j, k, l);
  });

  // B E_{11} ranges over the first column of M_mp, so column k of X is the first column of φ(E_{k1}).
  Mat x(field, n, m);
  for (std::size_t k = 1; k <= m; ++k) {
    Mat image = phi.unit_image(k, 1);
    for (std::size_t r = 0; r < n; ++r) x(r, k - 1) = image(r, 0);
  }

  for_units({m, p}, [&](std::size_t i, std::size_t j) {
    Mat c = unit_matrix(field, m, p, i, j);
    if (!(phi(c) == x * c)) throw InternalConsistencyError("solve_left_factor: φ(C) != XC");
  });
  for_units({m, q}, [&](std::size_t i, std::size_t j) {
    Mat d = unit_matrix(field, m, q, i, j);
    if (!(varphi(d) == x * d)) throw InternalConsistencyError("solve_left_factor: ϕ(D) != XD");
  });
  return x;
}

Mat solve_balanced(const BlockLinMap& phi, const BlockLinMap& varphi) {
  const auto m = phi.in_shape().rows, p = phi.in_shape().cols, q = phi.out_shape().cols;
  const auto n = varphi.in_shape().cols;
  require(phi.out_shape() == Shape{m, q} && varphi.in_shape() == Shape{q, n} &&
              varphi.out_shape() == Shape{p, n},
          "solve_balanced: expected φ: M_mp -> M_mq and ϕ: M_qn -> M_pn");
  const Field field = phi.field();

  for_unit_pairs({m, p}, {q, n}, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Mat a = unit_matrix(field, m, p, i, j);
    Mat b = unit_matrix(field, q, n, k, l);
    if (!(phi(a) * b == a * varphi(b))) throw HypothesisViolation("phi(A) B = A varphi(B)", i, j, k, l);
  });

  // φ(E_{1j}) is supported on its first row, which is row j of X.
  Mat x(field, p, q);
  for (std::size_t j = 1; j <= p; ++j) {
    Mat image = phi.unit_image(1, j);
    for (std::size_t c = 0; c < q; ++c) x(j - 1, c) = image(0, c);
  }

  for_units({m, p}, [&](std::size_t i, std::size_t j) {
    Mat c = unit_matrix(field, m, p, i, j);
    if (!(phi(c) == c * x)) throw InternalConsistencyError("solve_balanced: φ(C) != CX");
  });
  for_units({q, n}, [&](std::size_t i, std::size_t j) {
    Mat d = unit_matrix(field, q, n, i, j);
    if (!(varphi(d) == x * d)) throw InternalConsistencyError("solve_balanced: ϕ(D) != XD");
  });
  return x;
}

SandwichSolution solve_sandwich(const BlockLinMap& f, const BlockLinMap& g, const BlockLinMap& h) {
  const auto p = g.in_shape().rows, q = g.in_shape().cols, r = h.in_shape().cols;
  require(g.out_shape() == Shape{p, q} && h.in_shape() == Shape{q, r} &&
              h.out_shape() == Shape{q, r} && f.in_shape() == Shape{p, r} &&
              f.out_shape() == Shape{p, r},
          "solve_sandwich: expected f: M_pr, g: M_pq, h: M_qr");
  const Field field = f.field();

  for_unit_pairs({p, q}, {q, r}, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Mat a = unit_matrix(field, p, q, i, j);
    Mat b = unit_matrix(field, q, r, k, l);
    if (!(f(a * b) == g(a) * b + a * h(b))) throw HypothesisViolation("f(AB) = g(A)B + Ah(B)", i, j, k, l);
  });

  // X_{ij} = f(E_{j1})_{i1} - f(E_{11})_{11} δ_{ij},  Y_{kl} = f(E_{1k})_{1l}.
  const Scalar corner = f.unit_image(1, 1)(0, 0);
  Mat x(field, p, p);
  for (std::size_t j = 1; j <= p; ++j) {
    Mat image = f.unit_image(j, 1);
    for (std::size_t i = 1; i <= p; ++i) x(i - 1, j - 1) = image(i - 1, 0);
    x(j - 1, j - 1) -= corner;
  }
  Mat y(field, r, r);
  for (std::size_t k = 1; k <= r; ++k) {
    Mat image = f.unit_image(1, k);
    for (std::size_t l = 1; l <= r; ++l) y(k - 1, l - 1) = image(0, l - 1);
  }

  // (g(A) - XA) B = A (BY - h(B)): the balanced solver returns Z.
  auto shifted_g = BlockLinMap::from_function(field, {p, q}, {p, q},
                                              [&](const Mat& a) { return g(a) - x * a; });
  auto shifted_h = BlockLinMap::from_function(field, {q, r}, {q, r},
                                              [&](const Mat& b) { return b * y - h(b); });
  Mat z = solve_balanced(shifted_g, shifted_h);

  for_units({p, r}, [&](std::size_t i, std::size_t j) {
    Mat c = unit_matrix(field, p, r, i, j);
    if (!(f(c) == x * c + c * y)) throw InternalConsistencyError("solve_sandwich: f(C) != XC + CY");
  });
  for_units({p, q}, [&](std::size_t i, std::size_t j) {
    Mat a = unit_matrix(field, p, q, i, j);
    if (!(g(a) == x * a + a * z)) throw InternalConsistencyError("solve_sandwich: g(A) != XA + AZ");
  });
  for_units({q, r}, [&](std::size_t i, std::size_t j) {
    Mat b = unit_matrix(field, q, r, i, j);
    if (!(h(b) == b * y - z * b)) throw InternalConsistencyError("solve_sandwich: h(B) != BY - ZB");
  });
  return {std::move(x), std::move(y), std::move(z)};
}

}  // namespace nilder
