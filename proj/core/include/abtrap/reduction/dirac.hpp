#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "abtrap/reduction/constraints.hpp"

namespace abtrap::reduction {

using RfMatrix = std::vector<std::vector<RationalFunction>>;

enum class Classification { second_class, degenerate };
const char* to_string(Classification c);

/// C_ab = {phi_a, phi_b} together with its classification.
struct ConstraintMatrix {
  RfMatrix entries;
  RationalFunction determinant;
  Classification classification = Classification::degenerate;
};

/// The Poisson matrix has a determinant whose sign cannot be settled from
/// the positivity assumptions alone.
class ClassificationUndecidable : public std::runtime_error {
 public:
  ClassificationUndecidable(const std::string& what, RationalFunction determinant)
      : std::runtime_error(what), determinant_(std::move(determinant)) {}
  const RationalFunction& determinant() const noexcept { return determinant_; }

 private:
  RationalFunction determinant_;
};

/// Degenerate constraints: Dirac brackets cannot be formed.
class ReductionImpossible : public std::runtime_error {
 public:
  explicit ReductionImpossible(ConstraintMatrix matrix);
  const ConstraintMatrix& matrix() const noexcept { return matrix_; }

 private:
  ConstraintMatrix matrix_;
};

/// The Hamiltonian or constraints do not have the kinetic-square +
/// quadratic-potential structure the reduction handles.
class ShapeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Determinant and inverse of small matrices of rational functions.
RationalFunction determinant(const RfMatrix& m);
RfMatrix inverse(const RfMatrix& m);

ConstraintMatrix constraint_matrix(const ConstraintSet& cs,
                                   const algebra::Assumptions& assumptions = algebra::Assumptions::physical());

/// Dirac-bracket machinery for a second-class set, with x1, x2 kept as the
/// independent coordinates and the momenta eliminated on the surface.
class DiracStructure {
 public:
  /// Throws ReductionImpossible for degenerate sets and ShapeMismatch when the
  /// constraints cannot be solved for p1, p2.
  explicit DiracStructure(ConstraintSet cs,
                          const algebra::Assumptions& assumptions = algebra::Assumptions::physical());

  const ConstraintSet& constraints() const noexcept { return constraints_; }
  const ConstraintMatrix& matrix() const noexcept { return matrix_; }
  const RfMatrix& inverse_matrix() const noexcept { return inverse_; }
  /// p_i expressed through x1, x2 on the constraint surface.
  const algebra::Bindings& surface() const noexcept { return surface_; }

  /// {f, g}_P - {f, phi_a} (C^-1)_ab {phi_b, g}, not yet restricted.
  RationalFunction bracket_off_surface(const RationalFunction& f, const RationalFunction& g) const;
  /// Dirac bracket restricted to the constraint surface.
  RationalFunction bracket(const RationalFunction& f, const RationalFunction& g) const;
  /// Restriction of an observable to the constraint surface.
  RationalFunction on_surface(const RationalFunction& f) const;

  /// Brackets among (x1, x2, p1, p2), row-major 4x4.
  std::array<std::array<RationalFunction, 4>, 4> table() const;

 private:
  ConstraintSet constraints_;
  ConstraintMatrix matrix_;
  RfMatrix inverse_;
  algebra::Bindings surface_;
};

/// Convenience wrapper: builds the structure and evaluates one bracket.
RationalFunction dirac_bracket(const RationalFunction& f, const RationalFunction& g, const ConstraintSet& cs);

}  // namespace abtrap::reduction
