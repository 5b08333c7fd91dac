/*
 * errors.hpp
 * ----------
 * Exception hierarchy shared by the whole library.
 *
 * DomainError      precondition/domain violations (bad type/rank, weight not
 *                  dominant, missing database entry, ...)
 * CertificateError a family or product enumerator failed to leave the
 *                  evaluation window within its iteration cap
 * ResourceError    a request exceeded a configured resource bound (window
 *                  region too large)
 * UsageError       malformed user input at the CLI boundary
 */
#pragma once

#include <stdexcept>
#include <string>

namespace charop {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

class CertificateError : public Error {
public:
    explicit CertificateError(const std::string& msg) : Error(msg) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& msg) : Error(msg) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

} // namespace charop
