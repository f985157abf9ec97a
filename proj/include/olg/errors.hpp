// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace olg {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class EmptyInput : public Error {
  public:
    EmptyInput() : Error("input is empty") {}
};

/// Malformed JSON or YAML text. Line and column are 1-based; 0 means unknown.
class SyntaxError : public Error {
  public:
    SyntaxError(const std::string& message, std::size_t line, std::size_t column)
        : Error(message), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

class UnsupportedVersion : public Error {
  public:
    explicit UnsupportedVersion(std::string raw)
        : Error(raw.empty() ? std::string("no 'openapi' or 'swagger' version field")
                            : "unsupported specification version '" + raw + "'"),
          raw_(std::move(raw)) {}

    const std::string& raw() const noexcept { return raw_; }

  private:
    std::string raw_;
};

class ConversionError : public Error {
  public:
    using Error::Error;
};

/// The tree does not satisfy the document model invariants.
class InvalidDocument : public Error {
  public:
    using Error::Error;
};

class MalformedPointer : public Error {
  public:
    using Error::Error;
};

class PointerTargetMissing : public Error {
  public:
    PointerTargetMissing(const std::string& pointer, std::size_t token_index)
        : Error("JSON pointer '" + pointer + "' has no target (token " + std::to_string(token_index) + ")"),
          token_index_(token_index) {}

    std::size_t token_index() const noexcept { return token_index_; }

  private:
    std::size_t token_index_;
};

class ExternalReference : public Error {
  public:
    explicit ExternalReference(const std::string& ref)
        : Error("external reference '" + ref + "' is not followed"), ref_(ref) {}

    const std::string& ref() const noexcept { return ref_; }

  private:
    std::string ref_;
};

class CircularReference : public Error {
  public:
    explicit CircularReference(const std::string& ref)
        : Error("circular reference through '" + ref + "'"), ref_(ref) {}

    const std::string& ref() const noexcept { return ref_; }

  private:
    std::string ref_;
};

class UnresolvableReference : public Error {
  public:
    explicit UnresolvableReference(const std::string& ref, const std::string& why)
        : Error("cannot resolve reference '" + ref + "': " + why), ref_(ref) {}

    const std::string& ref() const noexcept { return ref_; }

  private:
    std::string ref_;
};

}  // namespace olg
