#include "quadforms/json_io.hpp"

#include <limits>

namespace qf {

Json int_to_json(const Int& v) {
  static const Int lo = std::numeric_limits<int64_t>::min();
  static const Int hi = std::numeric_limits<int64_t>::max();
  if (v >= lo && v <= hi) return static_cast<int64_t>(v);
  return v.str();
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw PreconditionError("expected integer (number or decimal string)");
}

Json rat_to_json(const Rat& r) {
  return Json{{"num", int_to_json(num(r))}, {"den", int_to_json(den(r))}};
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<int64_t>()));
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw PreconditionError("expected rational {num, den}");
  Int d = int_from_json(j.at("den"));
  if (d == 0) throw PreconditionError("rational with zero denominator");
  return Rat(int_from_json(j.at("num")), d);
}

Json form_to_json(const QuadraticForm& q) {
  Json h = Json::array();
  for (int i = 0; i < q.n(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < q.n(); ++j) row.push_back(int_to_json(q.hessian()(i, j)));
    h.push_back(std::move(row));
  }
  return Json{{"n", q.n()}, {"hessian", std::move(h)}};
}

QuadraticForm form_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("hessian"))
    throw PreconditionError("form must be {n, hessian}");
  int n = j.at("n").get<int>();
  const Json& h = j.at("hessian");
  if (!h.is_array() || static_cast<int>(h.size()) != n)
    throw PreconditionError("hessian must be an n x n array");
  IMat m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!h[i].is_array() || static_cast<int>(h[i].size()) != n)
      throw PreconditionError("hessian must be an n x n array");
    for (int k = 0; k < n; ++k) m(i, k) = int_from_json(h[i][k]);
  }
  return QuadraticForm(std::move(m));
}

std::string rat_to_decimal(const Rat& r, int digits) {
  Int n = num(r), d = den(r);
  bool neg = n < 0;
  if (neg) n = -n;
  Int whole = n / d, rem = n % d;
  std::string out = (neg && (whole != 0 || rem != 0) ? "-" : "") + whole.str();
  if (digits > 0) {
    out += '.';
    for (int i = 0; i < digits; ++i) {
      rem *= 10;
      out += static_cast<char>('0' + static_cast<int>(rem / d));
      rem %= d;
    }
  }
  return out;
}

}  // namespace qf
