#pragma once

#include <stdexcept>
#include <string>

namespace eon {

// Invalid caller-supplied arguments (shapes, ranges, unknown modes).
class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite intermediates or failed iterations; the message names the
// offending quantity (e.g. which layer produced the non-finite block).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// OS-level I/O failure (open/read/write).
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally broken input file (truncation, bad magic, bad header fields).
class malformed_file : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File written by a newer, unknown format version.
class version_mismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text input that fails to parse; message carries the 1-based line number.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Metric that is undefined on the given inputs (e.g. AUC with one class).
class undefined_metric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eon
