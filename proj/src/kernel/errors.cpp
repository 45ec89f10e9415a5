#include "sstt/kernel/errors.h"

#include <array>
#include <utility>

namespace sstt::kernel {

namespace {

constexpr std::array<std::pair<ErrorClass, std::string_view>, 14> kNames = {{
    {ErrorClass::kScope, "scope-error"},
    {ErrorClass::kTypeMismatch, "type-mismatch"},
    {ErrorClass::kBoundaryMismatch, "boundary-mismatch"},
    {ErrorClass::kShapeMembership, "shape-membership"},
    {ErrorClass::kIncompatibleBoundary, "incompatible-boundary"},
    {ErrorClass::kNonInclusion, "non-inclusion"},
    {ErrorClass::kNotSynthesizable, "not-synthesizable"},
    {ErrorClass::kCaseCoverage, "case-coverage"},
    {ErrorClass::kDuplicateName, "duplicate-name"},
    {ErrorClass::kSyntax, "syntax-error"},
    {ErrorClass::kEntailmentFailed, "entailment-failed"},
    {ErrorClass::kDependency, "dependency-error"},
    {ErrorClass::kResource, "resource"},
    {ErrorClass::kOracleDivergence, "oracle-divergence"},
}};

}  // namespace

std::string_view error_class_name(ErrorClass c) {
  for (const auto& [cls, name] : kNames)
    if (cls == c) return name;
  return "error";
}

std::optional<ErrorClass> parse_error_class(std::string_view name) {
  for (const auto& [cls, n] : kNames)
    if (n == name) return cls;
  return std::nullopt;
}

}  // namespace sstt::kernel
