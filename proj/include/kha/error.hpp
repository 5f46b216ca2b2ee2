#pragma once

#include <stdexcept>
#include <string>

namespace kha {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact division was requested but the divisor does not divide the dividend.
class NotDivisible : public Error {
public:
    NotDivisible() : Error("not divisible") {}
    explicit NotDivisible(const std::string& what) : Error("not divisible: " + what) {}
};

/// A shuffle sum failed to reduce to a Laurent polynomial.
class PolynomialityError : public Error {
public:
    explicit PolynomialityError(const std::string& what)
        : Error("polynomiality violated: " + what) {}
};

/// Operands live in different variable spaces or algebras.
class SpaceMismatch : public Error {
public:
    explicit SpaceMismatch(const std::string& what) : Error("variable-space mismatch: " + what) {}
};

/// Malformed input document; the message carries a JSON-pointer-like path.
class SchemaError : public Error {
public:
    SchemaError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace kha
