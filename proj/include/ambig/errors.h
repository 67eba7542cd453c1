#ifndef AMBIG_ERRORS_H_
#define AMBIG_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ambig {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse failure at a byte offset, with the tokens that would have been
// accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected,
              const std::string& detail);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

struct UnknownAgent : Error { using Error::Error; };
struct UnknownProp : Error { using Error::Error; };
struct UnknownState : Error { using Error::Error; };
struct ModelFormatError : Error { using Error::Error; };
struct NotPropositional : Error { using Error::Error; };
struct MissingSignals : Error { using Error::Error; };
struct CoreInvalid : Error { using Error::Error; };
struct NotCommonInterpretation : Error { using Error::Error; };
struct ModePrereqMissing : Error { using Error::Error; };
struct AlreadyIndexed : Error { using Error::Error; };
struct ClaimSpecMismatch : Error { using Error::Error; };

// A conditional probability whose conditioning event has prior mass zero.
struct UndefinedConditional : Error { using Error::Error; };

// An event that is not a union of the algebra atoms it is measured against.
struct NonMeasurable : Error { using Error::Error; };

}  // namespace ambig

#endif  // AMBIG_ERRORS_H_
