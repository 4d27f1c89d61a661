#pragma once

#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace relaygeo {

// Shortest round-trip decimal form; locale independent.
std::string format_double(double x);

/// Comma-separated rows terminated by '\n'. Values are written verbatim,
/// so fields must not contain commas.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    (write_field(fields, first), ...);
    put("\n");
  }

 private:
  template <typename T>
  void write_field(const T& value, bool& first) {
    if (!first) put(",");
    first = false;
    if constexpr (std::floating_point<T>) {
      put(format_double(static_cast<double>(value)));
    } else if constexpr (std::integral<T>) {
      put(std::to_string(value));
    } else {
      put(std::string_view(value));
    }
  }

  void put(std::string_view text);

  std::ostream& out_;
};

}  // namespace relaygeo
