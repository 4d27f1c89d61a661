#include "relaygeo/csv.hpp"

#include <charconv>
#include <ostream>

namespace relaygeo {

std::string format_double(double x) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, result.ptr);
}

void CsvWriter::put(std::string_view text) { out_.write(text.data(), static_cast<std::streamsize>(text.size())); }

}  // namespace relaygeo
