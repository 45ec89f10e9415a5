#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sstt/tope/oracle.h"

namespace sstt::kernel {

enum class ErrorClass {
  kScope,
  kTypeMismatch,
  kBoundaryMismatch,
  kShapeMembership,
  kIncompatibleBoundary,
  kNonInclusion,
  kNotSynthesizable,
  kCaseCoverage,
  kDuplicateName,
  kSyntax,
  kEntailmentFailed,
  kDependency,
  kResource,
  kOracleDivergence,
};

// Stable kebab-case names used in manifests and reports.
std::string_view error_class_name(ErrorClass c);
std::optional<ErrorClass> parse_error_class(std::string_view name);

class KernelError : public std::runtime_error {
 public:
  KernelError(ErrorClass cls, std::string message,
              std::optional<tope::Assignment> countermodel = std::nullopt)
      : std::runtime_error(std::move(message)), cls_(cls), countermodel_(std::move(countermodel)) {}

  ErrorClass error_class() const { return cls_; }
  const std::optional<tope::Assignment>& countermodel() const { return countermodel_; }

  bool has_pos() const { return line_ > 0; }
  int line() const { return line_; }
  int col() const { return col_; }
  void set_pos(int line, int col) {
    line_ = line;
    col_ = col;
  }

 private:
  ErrorClass cls_;
  std::optional<tope::Assignment> countermodel_;
  int line_ = 0;
  int col_ = 0;
};

}  // namespace sstt::kernel
