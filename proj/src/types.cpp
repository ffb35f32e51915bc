#include "arith_harmonics/types.hpp"

#include <charconv>
#include <cstdio>
#include <string>

namespace ah {

namespace {
double parse_real(std::string_view t, std::string_view whole) {
  if (t.empty()) throw InvalidArgument("cannot parse complex value '" + std::string(whole) + "'");
  std::string buf(t);
  if (buf.front() == '+') buf.erase(0, 1);
  double v = 0.0;
  const char* first = buf.data();
  const char* last = buf.data() + buf.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw InvalidArgument("cannot parse complex value '" + std::string(whole) + "'");
  return v;
}
}  // namespace

ComplexParam ComplexParam::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw InvalidArgument("empty complex value");
  if (s.back() != 'i' && s.back() != 'j') return ComplexParam(parse_real(s, text), 0.0);

  s.pop_back();
  // Split at the last sign that is not an exponent sign and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  std::string_view re_part = split == std::string::npos ? std::string_view{} : std::string_view(s).substr(0, split);
  std::string_view im_part = split == std::string::npos ? std::string_view(s) : std::string_view(s).substr(split);
  double im = 0.0;
  if (im_part.empty() || im_part == "+")
    im = 1.0;
  else if (im_part == "-")
    im = -1.0;
  else
    im = parse_real(im_part, text);
  const double re = re_part.empty() ? 0.0 : parse_real(re_part, text);
  return ComplexParam(re, im);
}

std::string ComplexParam::to_string() const {
  if (im_ == 0.0) return format_double(re_);
  std::string out = format_double(re_);
  const std::string im = format_double(im_);
  if (im.front() != '-') out += '+';
  return out + im + "i";
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace ah
