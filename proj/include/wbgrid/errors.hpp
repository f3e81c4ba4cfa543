#ifndef WBGRID_ERRORS_HPP
#define WBGRID_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace wbgrid {

// Bad arguments or malformed input supplied by the caller.
struct parameter_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A position outside a sequence, grid or view.
struct index_error : parameter_error {
  using parameter_error::parameter_error;
};

// The requested (n, f) combination cannot be handled by the scheme.
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A received array is not a valid codeword. `stage` names the decoding
// step that noticed the damage.
class corrupt_codeword_error : public std::runtime_error {
public:
  corrupt_codeword_error(std::string stage, const std::string& detail)
      : std::runtime_error(stage + ": " + detail), stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

// A precondition that only a buggy caller can violate.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace wbgrid

#endif
