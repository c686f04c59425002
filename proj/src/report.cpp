#include <charconv>
#include <string>

#include "hexid/error.hpp"
#include "hexid/rational.hpp"

namespace hexid {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidCode: return "InvalidCode";
    case ErrorKind::NotAOneCluster: return "NotAOneCluster";
    case ErrorKind::NotAThreeCluster: return "NotAThreeCluster";
    case ErrorKind::UnsupportedKind: return "UnsupportedKind";
    case ErrorKind::AmbiguousDonor: return "AmbiguousDonor";
    case ErrorKind::RegionTooLarge: return "RegionTooLarge";
    case ErrorKind::DomainTooLarge: return "DomainTooLarge";
  }
  return "Unknown";
}

std::string formatRational(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {
long long parseInteger(std::string_view text) {
  long long value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw Error(ErrorKind::Parse, "not an integer: '" + std::string(text) + "'");
  return value;
}
}  // namespace

Rational parseRational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parseInteger(text));
  const long long num = parseInteger(text.substr(0, slash));
  const long long den = parseInteger(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

double toDouble(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace hexid
