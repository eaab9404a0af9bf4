#pragma once

#include <stdexcept>
#include <string>

namespace bocce {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A requested resolution exceeds the configured maximum dyadic level.
class ResolutionOverflow : public Error {
public:
    explicit ResolutionOverflow(const std::string& what) : Error(what) {}
};

/// Two objects with incompatible ambient space kinds were combined.
class KindMismatch : public Error {
public:
    explicit KindMismatch(const std::string& what) : Error(what) {}
};

/// An exact enumeration would exceed its configured cap.
class EnumerationOverflow : public Error {
public:
    explicit EnumerationOverflow(const std::string& what) : Error(what) {}
};

/// Malformed textual/JSON input.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace bocce
