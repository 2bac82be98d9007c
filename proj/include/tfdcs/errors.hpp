#ifndef TFDCS_ERRORS_HPP
#define TFDCS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace tfdcs {

// Numeric failure carrying a stable machine-readable kind. The CLI maps these
// to exit code 3 and prints the kind, so kinds are part of the tool contract.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TFDCS_ERROR_CLASS(class_name, kind_string)                  \
  class class_name : public numeric_error {                         \
   public:                                                          \
    explicit class_name(const std::string& msg)                     \
        : numeric_error(kind_string, msg) {}                        \
  }

TFDCS_ERROR_CLASS(domain_error, "domain");
TFDCS_ERROR_CLASS(divergence_error, "divergence");
TFDCS_ERROR_CLASS(convergence_error, "non-convergence");
TFDCS_ERROR_CLASS(truncation_error, "truncation-insufficient");
TFDCS_ERROR_CLASS(unsupported_family_error, "unsupported-family");
TFDCS_ERROR_CLASS(out_of_range_error, "out-of-range");
TFDCS_ERROR_CLASS(dimension_error, "dimension-mismatch");
TFDCS_ERROR_CLASS(degenerate_levels_error, "degenerate-levels");
TFDCS_ERROR_CLASS(singularity_error, "singularity");

#undef TFDCS_ERROR_CLASS

// Configuration/usage problems (bad model file, bad flag combination).
// The CLI maps these to exit code 2.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tfdcs

#endif
