#include "abtrap/reduction/dirac.hpp"

#include "abtrap/algebra/expression_io.hpp"

namespace abtrap::reduction {

using algebra::poisson_bracket;

const char* to_string(Classification c) {
  return c == Classification::second_class ? "second_class" : "degenerate";
}

namespace {

std::string matrix_string(const RfMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += i == 0 ? "[" : ", [";
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j != 0) out += ", ";
      out += algebra::to_string(m[i][j]);
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace

ReductionImpossible::ReductionImpossible(ConstraintMatrix matrix)
    : std::runtime_error("constraint Poisson matrix " + matrix_string(matrix.entries) +
                         " is degenerate: Dirac brackets are undefined and no quantum dynamics "
                         "survives the vanishing-kinetic-energy limit"),
      matrix_(std::move(matrix)) {}

RationalFunction determinant(const RfMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return RationalFunction(1L);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  RationalFunction det;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    RfMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<RationalFunction> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    const RationalFunction term = m[0][col] * determinant(minor);
    det += (col % 2 == 0) ? term : -term;
  }
  return det;
}

RfMatrix inverse(const RfMatrix& m) {
  const std::size_t n = m.size();
  RfMatrix a = m;
  RfMatrix inv(n, std::vector<RationalFunction>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = RationalFunction(1L);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw std::domain_error("matrix of rational functions is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const RationalFunction scale = a[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const RationalFunction factor = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

ConstraintMatrix constraint_matrix(const ConstraintSet& cs, const algebra::Assumptions& assumptions) {
  const std::size_t n = cs.size();
  ConstraintMatrix out;
  out.entries.assign(n, std::vector<RationalFunction>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      out.entries[a][b] = poisson_bracket(cs[a], cs[b]);
      out.entries[b][a] = -out.entries[a][b];
    }
  }
  out.determinant = determinant(out.entries);
  switch (algebra::sign_under(out.determinant, assumptions)) {
    case algebra::Sign::zero:
      out.classification = Classification::degenerate;
      break;
    case algebra::Sign::positive:
    case algebra::Sign::negative:
      out.classification = Classification::second_class;
      break;
    case algebra::Sign::indeterminate:
      throw ClassificationUndecidable("cannot decide whether det C = " + algebra::to_string(out.determinant) +
                                          " vanishes under the declared positivity",
                                      out.determinant);
  }
  return out;
}

namespace {

algebra::Bindings solve_for_momenta(const ConstraintSet& cs) {
  if (cs.size() != 2) throw ShapeMismatch("eliminating p1, p2 needs exactly two constraints");
  const auto& ps = algebra::momenta();
  algebra::Bindings zero_p{{ps[0], RationalFunction()}, {ps[1], RationalFunction()}};
  RfMatrix jacobian(2, std::vector<RationalFunction>(2));
  std::vector<RationalFunction> rest(2);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      jacobian[a][b] = cs[a].derivative(ps[b]);
      if (jacobian[a][b].contains(ps[0]) || jacobian[a][b].contains(ps[1])) {
        throw ShapeMismatch("constraints are not affine in the momenta");
      }
    }
    rest[a] = algebra::substitute(cs[a], zero_p);
  }
  if (determinant(jacobian).is_zero()) throw ShapeMismatch("constraints cannot be solved for p1, p2");
  const RfMatrix jinv = inverse(jacobian);
  algebra::Bindings out;
  for (std::size_t b = 0; b < 2; ++b) {
    RationalFunction value;
    for (std::size_t a = 0; a < 2; ++a) value -= jinv[b][a] * rest[a];
    out.emplace(ps[b], value);
  }
  return out;
}

}  // namespace

DiracStructure::DiracStructure(ConstraintSet cs, const algebra::Assumptions& assumptions)
    : constraints_(std::move(cs)), matrix_(constraint_matrix(constraints_, assumptions)) {
  if (matrix_.classification == Classification::degenerate) throw ReductionImpossible(matrix_);
  inverse_ = inverse(matrix_.entries);
  surface_ = solve_for_momenta(constraints_);
}

RationalFunction DiracStructure::bracket_off_surface(const RationalFunction& f, const RationalFunction& g) const {
  const std::size_t n = constraints_.size();
  std::vector<RationalFunction> f_phi(n);
  std::vector<RationalFunction> phi_g(n);
  for (std::size_t a = 0; a < n; ++a) {
    f_phi[a] = poisson_bracket(f, constraints_[a]);
    phi_g[a] = poisson_bracket(constraints_[a], g);
  }
  RationalFunction out = poisson_bracket(f, g);
  for (std::size_t a = 0; a < n; ++a) {
    if (f_phi[a].is_zero()) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (inverse_[a][b].is_zero() || phi_g[b].is_zero()) continue;
      out -= f_phi[a] * inverse_[a][b] * phi_g[b];
    }
  }
  return out;
}

RationalFunction DiracStructure::bracket(const RationalFunction& f, const RationalFunction& g) const {
  return on_surface(bracket_off_surface(f, g));
}

RationalFunction DiracStructure::on_surface(const RationalFunction& f) const {
  return algebra::substitute(f, surface_);
}

std::array<std::array<RationalFunction, 4>, 4> DiracStructure::table() const {
  const std::array<RationalFunction, 4> basis = {RationalFunction(algebra::x1()), RationalFunction(algebra::x2()),
                                                 RationalFunction(algebra::p1()), RationalFunction(algebra::p2())};
  std::array<std::array<RationalFunction, 4>, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      out[i][j] = bracket(basis[i], basis[j]);
      out[j][i] = -out[i][j];
    }
  }
  return out;
}

RationalFunction dirac_bracket(const RationalFunction& f, const RationalFunction& g, const ConstraintSet& cs) {
  return DiracStructure(cs).bracket(f, g);
}

}  // namespace abtrap::reduction
