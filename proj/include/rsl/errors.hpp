#pragma once

#include <stdexcept>
#include <string>

namespace rsl {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class dimension_mismatch : public error {
public:
    explicit dimension_mismatch(const std::string& what)
        : error("dimension mismatch: " + what) {}
};

class singular_matrix : public error {
public:
    explicit singular_matrix(const std::string& what = "matrix is singular")
        : error(what) {}
};

class not_prime : public error {
public:
    explicit not_prime(unsigned long p)
        : error("modulus " + std::to_string(p) + " is not prime") {}
};

/// A prime divides the denominator of a rational entry being reduced mod p.
class bad_reduction : public error {
public:
    explicit bad_reduction(const std::string& what) : error("bad reduction: " + what) {}
};

class parse_error : public error {
public:
    explicit parse_error(const std::string& what) : error("parse error: " + what) {}
};

/// Input outside the domain an operation accepts (non-sl_r matrix, bad preset, ...).
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

/// A proven inequality failed to hold. Always an implementation bug.
class bound_violation : public error {
public:
    explicit bound_violation(const std::string& what) : error("bound violation: " + what) {}
};

} // namespace rsl
