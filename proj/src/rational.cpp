#include "cisnim/rational.hpp"

#include "cisnim/errors.hpp"

namespace cisnim {

std::string decimal_string(const mpq_class& q, int sig_digits) {
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();  // canonical: den > 0
  bool neg = num < 0;
  if (neg) num = -num;

  mpz_class ipart = num / den;
  mpz_class rem = num % den;

  std::string head = ipart.get_str();
  int sig = ipart == 0 ? 0 : static_cast<int>(head.size());

  std::string frac;
  while (rem != 0 && sig < sig_digits) {
    rem *= 10;
    mpz_class digit = rem / den;
    rem %= den;
    frac.push_back(static_cast<char>('0' + digit.get_ui()));
    if (sig > 0 || digit != 0) ++sig;
  }
  if (frac.empty()) frac = "0";

  std::string out;
  if (neg && (ipart != 0 || frac.find_first_not_of('0') != std::string::npos)) {
    out.push_back('-');
  }
  out += head;
  out.push_back('.');
  out += frac;
  return out;
}

mpq_class parse_rational(const std::string& text) {
  auto parse_int = [](const std::string& s) {
    if (s.empty()) throw parse_error("empty number in rational literal");
    size_t start = s[0] == '-' || s[0] == '+' ? 1 : 0;
    if (start == s.size()) throw parse_error("sign without digits");
    for (size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw parse_error("invalid digit in rational literal: " + s);
      }
    }
    return mpz_class(s, 10);
  };

  size_t slash = text.find('/');
  if (slash == std::string::npos) {
    return mpq_class(parse_int(text));
  }
  mpz_class num = parse_int(text.substr(0, slash));
  mpz_class den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw parse_error("rational denominator must be positive");
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace cisnim
