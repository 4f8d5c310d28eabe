#pragma once

#include <stdexcept>
#include <string>

namespace idp {

/// Base for every error raised by the library. `module()` names the pipeline
/// stage that raised it so the CLI can report provenance.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message)
        : std::runtime_error(message), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

class ParseError : public Error {
public:
    ParseError(std::string file, int line, int column, const std::string& message)
        : Error("java-analyzer", file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          file_(std::move(file)), line_(line), column_(column) {}

    const std::string& file() const noexcept { return file_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    std::string file_;
    int line_;
    int column_;
};

class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& message) : Error("dataset-builder", message) {}
};

class InsufficientMinority : public Error {
public:
    explicit InsufficientMinority(const std::string& message) : Error("smote-balancer", message) {}
};

class EmptyDatabase : public Error {
public:
    EmptyDatabase() : Error("rule-miner", "transaction database is empty") {}
};

class ZeroAntecedentSupport : public Error {
public:
    ZeroAntecedentSupport() : Error("rule-miner", "antecedent has zero support") {}
};

class VocabularyMismatch : public Error {
public:
    explicit VocabularyMismatch(const std::string& message) : Error("lfr-classifier", message) {}
};

class TooFewMinority : public Error {
public:
    explicit TooFewMinority(const std::string& message) : Error("evaluator", message) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error("config", message) {}
};

} // namespace idp
