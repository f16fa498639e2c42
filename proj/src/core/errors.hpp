// Typed error taxonomy shared by all modules. Every domain error carries a
// stable code string that the C API and CLI surface verbatim.

#ifndef FLATK_ERRORS_HPP
#define FLATK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flatk {

class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Malformed input documents / unparsable field specs. Mapped to a distinct
// exit code by the CLI.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

inline DomainError err_non_prime(long p) {
    return DomainError("NonPrime", std::to_string(p) + " is not prime");
}
inline DomainError err_reducible_modulus(const std::string& poly) {
    return DomainError("ReducibleModulus", poly + " is reducible");
}
inline DomainError err_ctx_mismatch(const std::string& detail) {
    return DomainError("CtxMismatch", detail);
}
inline DomainError err_singular(const std::string& detail) {
    return DomainError("SingularMatrix", detail);
}
inline DomainError err_shape(const std::string& detail) {
    return DomainError("ShapeMismatch", detail);
}
inline DomainError err_space_mismatch(const std::string& detail) {
    return DomainError("SpaceMismatch", detail);
}

}  // namespace flatk

#endif
