#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sstt/tope/oracle.h"
#include "sstt/tope/tope.h"

namespace sstt::shape {

// A sub-polytope of a cube: the points of `cube` satisfying `tope`.
struct Shape {
  tope::CubeContext cube;
  tope::Tope tope;
};

class UnknownShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InclusionError : public std::runtime_error {
 public:
  InclusionError(std::string message, std::optional<tope::Assignment> countermodel)
      : std::runtime_error(std::move(message)), countermodel_(std::move(countermodel)) {}
  const std::optional<tope::Assignment>& countermodel() const { return countermodel_; }

 private:
  std::optional<tope::Assignment> countermodel_;
};

struct InclusionResult;

// Two topes over one cube. Only check_inclusion (and operations built on
// verified inputs) produce verified values.
class ShapeInclusion {
 public:
  static ShapeInclusion unverified(tope::CubeContext cube, tope::Tope sub, tope::Tope sup) {
    return ShapeInclusion(std::move(cube), std::move(sub), std::move(sup), false);
  }

  const tope::CubeContext& cube() const { return cube_; }
  const tope::Tope& sub() const { return sub_; }
  const tope::Tope& sup() const { return sup_; }
  bool verified() const { return verified_; }

  Shape domain() const { return {cube_, sub_}; }
  Shape codomain() const { return {cube_, sup_}; }

 private:
  friend InclusionResult check_inclusion(const tope::CubeContext&, const tope::Tope&,
                                         const tope::Tope&);
  ShapeInclusion(tope::CubeContext cube, tope::Tope sub, tope::Tope sup, bool verified)
      : cube_(std::move(cube)), sub_(std::move(sub)), sup_(std::move(sup)), verified_(verified) {}

  tope::CubeContext cube_;
  tope::Tope sub_;
  tope::Tope sup_;
  bool verified_;
};

struct InclusionResult {
  std::optional<ShapeInclusion> inclusion;
  // Set when the inclusion fails.
  std::optional<tope::Assignment> countermodel;

  bool ok() const { return inclusion.has_value(); }
};

InclusionResult check_inclusion(const tope::CubeContext& cube, const tope::Tope& sub,
                                const tope::Tope& sup);
// Throwing variant: InclusionError carries the countermodel.
ShapeInclusion is_inclusion(const tope::CubeContext& cube, const tope::Tope& sub,
                            const tope::Tope& sup);

// Names: Δ0..Δ3, ∂Δ1, ∂Δ2, Λ²₁, square, with ASCII spellings Delta0..Delta3,
// dDelta1, dDelta2, Lambda21, square.
Shape standard_shape(std::string_view name);
// Names: i0, i1, b1, ∂Δ2⊂Δ2 (dDelta2<Delta2), Λ²₁⊂Δ2 (Lambda21<Delta2), and
// id:<shape name> for the identity inclusion of a standard shape.
ShapeInclusion standard_inclusion(std::string_view name);
std::vector<std::string> standard_shape_names();
std::vector<std::string> standard_inclusion_names();

// Cube is a's variables followed by b's, renamed away from a's where they
// clash; tope is the conjunction.
Shape product(const Shape& a, const Shape& b);
// Renaming applied to b's variables by product(a, b).
std::map<std::string, tope::IntervalTerm> freshening(const tope::CubeContext& a,
                                                     const tope::CubeContext& b);

// Pushout product: over the product cube, sub = (j.sub /\ k.sup) \/ (j.sup /\ k.sub)
// inside sup = j.sup /\ k.sup. Throws InclusionError on unverified inputs.
ShapeInclusion leibniz_tensor(const ShapeInclusion& j, const ShapeInclusion& k);

// Shape-level comparisons. The cubes must have the same dimension; b's
// variables are identified positionally with a's.
InclusionResult subseteq(const Shape& a, const Shape& b);
bool shape_equal(const Shape& a, const Shape& b);

// `{t : 2, s : 2 | TOPE}`.
std::string to_string(const Shape& s);
// `{t : 2 | SUB} ⊆ {t : 2 | SUP}`.
std::string to_string(const ShapeInclusion& j);

// A standard name or `{t : 2, s : 2 | TOPE}` (the `: 2` and commas are optional).
Shape parse_shape(std::string_view text);
// A standard inclusion name or `SHAPE ⊆ SHAPE` (ASCII `<=` also accepted).
// The result is verified; non-inclusions throw InclusionError.
ShapeInclusion parse_inclusion(std::string_view text);

}  // namespace sstt::shape
