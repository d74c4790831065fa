#ifndef COLLAPSE_ERROR_HPP_
#define COLLAPSE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace collapse {

  //! Malformed input: cycle strings, group files, rack or cocycle literals.
  class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! A configured size cap (group order, subgroup order, matrix rows) was hit.
  class CapExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! The elimination budget (sum of cubed block sizes) of one degree was hit.
  class WorkCapExceeded : public CapExceeded {
   public:
    using CapExceeded::CapExceeded;
  };

  //! An internal self-check failed, e.g. a constructed cocycle that does not
  //! satisfy the cocycle identity.
  class InvariantViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
  };

  namespace detail {
    [[noreturn]] inline void invariant_failure(std::string const& what) {
      throw InvariantViolation("internal invariant violated: " + what);
    }
  }  // namespace detail

}  // namespace collapse

#endif  // COLLAPSE_ERROR_HPP_
