#include "bipara/para_complex.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "bipara/errors.hpp"
#include "bipara/number_format.hpp"

namespace bipara {

ParaComplex& ParaComplex::operator/=(ParaComplex o) {
  if (!o.invertible()) {
    throw ZeroDivisor("division by zero divisor " + to_string(o));
  }
  auto p = idempotent();
  auto q = o.idempotent();
  *this = from_idempotent({p.u / q.u, p.v / q.v});
  return *this;
}

double norm_max(ParaComplex x) { return std::max(std::abs(x.a()), std::abs(x.b())); }

ParaComplex pow(ParaComplex x, int exponent) {
  if (exponent < 0) {
    return pc::one / pow(x, -exponent);
  }
  ParaComplex result = pc::one;
  ParaComplex base = x;
  for (unsigned e = static_cast<unsigned>(exponent); e != 0; e >>= 1) {
    if (e & 1u) result *= base;
    base *= base;
  }
  return result;
}

namespace {

template <typename F>
ParaComplex componentwise(ParaComplex x, F f) {
  auto p = x.idempotent();
  return ParaComplex::from_idempotent({f(p.u), f(p.v)});
}

}  // namespace

ParaComplex exp(ParaComplex x) {
  return componentwise(x, [](double c) { return std::exp(c); });
}

ParaComplex log(ParaComplex x) {
  auto p = x.idempotent();
  if (!(p.u > 0.0) || !(p.v > 0.0)) {
    throw DomainError("ln of " + to_string(x) + " (idempotent components " +
                      format_double(p.u) + ", " + format_double(p.v) + ")");
  }
  return ParaComplex::from_idempotent({std::log(p.u), std::log(p.v)});
}

ParaComplex sin(ParaComplex x) {
  return componentwise(x, [](double c) { return std::sin(c); });
}

ParaComplex cos(ParaComplex x) {
  return componentwise(x, [](double c) { return std::cos(c); });
}

std::string to_string(ParaComplex x) {
  std::string s = format_double(x.a());
  if (x.b() < 0 || (x.b() == 0 && std::signbit(x.b()))) {
    s += "-" + format_double(-x.b());
  } else {
    s += "+" + format_double(x.b());
  }
  return s + "*j";
}

std::ostream& operator<<(std::ostream& os, ParaComplex x) { return os << to_string(x); }

}  // namespace bipara
