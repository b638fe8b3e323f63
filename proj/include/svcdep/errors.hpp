#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace svcdep {

/// One broken well-formedness rule. `rule` is a stable machine code,
/// `subject` the service or channel it concerns.
struct Violation {
  std::string rule;
  std::string subject;
  std::string message;

  bool operator==(const Violation&) const = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownService : public Error {
 public:
  explicit UnknownService(std::string id)
      : Error("unknown service '" + id + "'"), id_(std::move(id)) {}
  [[nodiscard]] const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class UnknownChannel : public Error {
 public:
  explicit UnknownChannel(std::string id)
      : Error("unknown channel '" + id + "'"), id_(std::move(id)) {}
  [[nodiscard]] const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

/// A wcet/perf/uplsize/threshold value needed by an analysis is absent.
class MissingMeasure : public Error {
 public:
  MissingMeasure(std::string measure, std::string subject)
      : Error("missing " + measure + " measure for '" + subject + "'"),
        measure_(std::move(measure)),
        subject_(std::move(subject)) {}
  [[nodiscard]] const std::string& measure() const noexcept { return measure_; }
  [[nodiscard]] const std::string& subject() const noexcept { return subject_; }

 private:
  std::string measure_;
  std::string subject_;
};

class CyclicGraph : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a document; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class InvalidArchitecture : public Error {
 public:
  explicit InvalidArchitecture(std::vector<Violation> violations)
      : Error(summarize(violations)), violations_(std::move(violations)) {}
  [[nodiscard]] const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  static std::string summarize(const std::vector<Violation>& v) {
    std::string text = "architecture has " + std::to_string(v.size()) + " violation(s)";
    for (const auto& item : v) text += "\n  " + item.rule + " [" + item.subject + "]: " + item.message;
    return text;
  }
  std::vector<Violation> violations_;
};

}  // namespace svcdep
