#ifndef TORIC_ERRORS_HPP
#define TORIC_ERRORS_HPP

// Error taxonomy shared by the library and the CLI exit-code mapping:
//   SchemaError   -> exit 1 (malformed input documents)
//   MathError     -> exit 2 (mathematical precondition violated)
//   MismatchError -> exit 3 (independent oracles disagree; a correctness bug)

#include <stdexcept>
#include <string>

namespace toric {

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

struct MathError : std::runtime_error {
    std::string code;  // e.g. "NonSmooth", "NotFullDim", "CannotAmplify"
    MathError(std::string code_, const std::string& what)
        : std::runtime_error(code_ + ": " + what), code(std::move(code_)) {}
};

struct MismatchError : std::runtime_error {
    explicit MismatchError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace toric

#endif
