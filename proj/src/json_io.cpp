#include "padicfs/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace padicfs {

namespace {

Json rationalList(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const Rational& x : xs) out.push_back(toString(x));
  return out;
}

std::string textOf(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) return formatDouble(j.get<double>());
  throw Error("expected a number or numeric string, got " + j.dump());
}

std::optional<Rational> exactText(const std::string& s) {
  try {
    return parseRational(s);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::optional<Cyclo> exactCoefficient(const Json& c) {
  if (c.contains("exact")) return Cyclo::parse(c.at("exact").get<std::string>());
  auto re = exactText(textOf(c.at("re")));
  auto im = exactText(textOf(c.value("im", Json("0"))));
  if (!re || !im) return std::nullopt;
  Cyclo out(*re);
  if (*im != 0) out += Cyclo(*im) * Cyclo::root(4, 1);
  return out;
}

Complex numericCoefficient(const Json& c) {
  if (auto exact = exactCoefficient(c)) return exact->toComplex();
  return {std::stod(textOf(c.at("re"))), std::stod(textOf(c.value("im", Json("0"))))};
}

Json exactCoefficientToJson(const Cyclo& c) {
  if (c.isRational()) return Json{{"re", toString(c.rationalValue())}, {"im", "0"}};
  const Cyclo i = Cyclo::root(4, 1);
  // Elements of Q(i): re + im·i with re, im rational.
  const Cyclo im2 = (c - c.conj()) * (-i);  // 2·Im
  const Cyclo re2 = c + c.conj();
  if (re2.isRational() && im2.isRational()) {
    const Rational re = re2.rationalValue() / 2;
    const Rational im = im2.rationalValue() / 2;
    if (Cyclo(re) + Cyclo(im) * i == c) return Json{{"re", toString(re)}, {"im", toString(im)}};
  }
  const Complex z = c.toComplex();
  return Json{{"exact", c.toString()}, {"re", formatDouble(z.real())}, {"im", formatDouble(z.imag())}};
}

template <class C>
Json sbJson(const SBFunction<C>& f) {
  Json terms = Json::array();
  for (const auto& [ball, c] : f.terms()) {
    Json t = ballToJson(ball);
    if constexpr (std::is_same_v<C, Cyclo>) {
      t["coeff"] = exactCoefficientToJson(c);
    } else {
      t["coeff"] = Json{{"re", formatDouble(c.real())}, {"im", formatDouble(c.imag())}};
    }
    terms.push_back(std::move(t));
  }
  return Json{{"n", f.dimension()}, {"p", f.p()}, {"terms", std::move(terms)}};
}

std::string coefficientText(const Cyclo& c) {
  return c.isRational() ? toString(c.rationalValue()) : c.toString();
}

}  // namespace

std::string formatDouble(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json complexToJson(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json ballToJson(const Ball& b) { return Json{{"level", b.level()}, {"center", rationalList(b.center())}}; }

Ball ballFromJson(const Json& j, long p) {
  std::vector<Rational> center;
  for (const Json& c : j.at("center")) center.push_back(parseRational(textOf(c)));
  return Ball(p, j.at("level").get<long>(), std::move(center));
}

Json sbToJson(const ExactSB& f) { return sbJson(f); }
Json sbToJson(const ComplexSB& f) { return sbJson(f); }

bool isExactSBJson(const Json& j) {
  for (const Json& t : j.at("terms")) {
    if (!exactCoefficient(t.at("coeff"))) return false;
  }
  return true;
}

ExactSB exactSBFromJson(const Json& j) {
  const long p = j.at("p").get<long>();
  const int n = j.at("n").get<int>();
  std::vector<ExactSB::Term> raw;
  for (const Json& t : j.at("terms")) {
    auto c = exactCoefficient(t.at("coeff"));
    if (!c) throw Error("coefficient is not exact: " + t.at("coeff").dump());
    Ball b = ballFromJson(t, p);
    if (b.dimension() != n) throw Error("ball dimension differs from n");
    raw.emplace_back(std::move(b), *c);
  }
  return ExactSB::fromRaw(p, n, std::move(raw));
}

ComplexSB complexSBFromJson(const Json& j) {
  const long p = j.at("p").get<long>();
  const int n = j.at("n").get<int>();
  std::vector<ComplexSB::Term> raw;
  for (const Json& t : j.at("terms")) {
    Ball b = ballFromJson(t, p);
    if (b.dimension() != n) throw Error("ball dimension differs from n");
    raw.emplace_back(std::move(b), numericCoefficient(t.at("coeff")));
  }
  return ComplexSB::fromRaw(p, n, std::move(raw));
}

Json ratFuncToJson(const RatFunc& r) {
  Json num = Json::array();
  for (const auto& [k, c] : r.numerator()) num.push_back(Json::array({k, coefficientText(c)}));
  Json den = Json::array();
  for (const auto& [f, mult] : r.denominator()) {
    for (int i = 0; i < mult; ++i) den.push_back(Json::array({f.a, f.b}));
  }
  return Json{{"p", r.p()}, {"num", std::move(num)}, {"den", std::move(den)}};
}

RatFunc ratFuncFromJson(const Json& j) {
  const long p = j.at("p").get<long>();
  RatFunc::Numerator num;
  for (const Json& e : j.at("num")) num[e.at(0).get<long>()] += Cyclo::parse(textOf(e.at(1)));
  RatFunc::Denominator den;
  for (const Json& e : j.at("den")) den[DenFactor{e.at(0).get<long>(), e.at(1).get<long>()}] += 1;
  return RatFunc(p, std::move(num), std::move(den));
}

Json zetaResultToJson(const ZetaResult& z) {
  Json undecided = Json::array();
  for (const auto& u : z.undecided) {
    undecided.push_back(Json{{"ball", ballToJson(u.ball)}, {"sup_bound", u.supBound}});
  }
  return Json{{"value", ratFuncToJson(z.value)}, {"certified", z.certified}, {"undecided", std::move(undecided)}};
}

ZetaResult zetaResultFromJson(const Json& j) {
  ZetaResult z{ratFuncFromJson(j.at("value")), j.at("certified").get<bool>(), {}};
  for (const Json& u : j.at("undecided")) {
    z.undecided.push_back({ballFromJson(u.at("ball"), z.value.p()), u.at("sup_bound").get<double>()});
  }
  return z;
}

Json laurentToJson(const LaurentSeries& L) {
  Json coefficients = Json::array();
  for (int m = L.order; m <= L.highest(); ++m) {
    coefficients.push_back(
        Json{{"m", m}, {"exact", L.coefficient(m).toString()}, {"value", complexToJson(L.render(m))}});
  }
  return Json{{"p", L.p}, {"beta", toString(L.beta)}, {"order", L.order}, {"coefficients", std::move(coefficients)}};
}

Json bracketToJson(const ZetaBracket& b) {
  return Json{{"center", complexToJson(b.center)}, {"radius", b.radius}, {"width", b.width()}};
}

Json applyReportToJson(const ApplyReport& r) {
  return Json{{"result", sbToJson(r.result)},
              {"exact_result", r.exactResult ? sbToJson(*r.exactResult) : Json(nullptr)},
              {"multiplier", sbToJson(r.multiplier)},
              {"exact", r.exact},
              {"l2_error_bound", r.l2ErrorBound}};
}

Json gridToJson(const GridFunction& g) {
  Json values = Json::array();
  for (const Complex& v : g.values) values.push_back(Json::array({v.real(), v.imag()}));
  return Json{{"p", g.p}, {"n", g.n}, {"M", g.res.M}, {"N", g.res.N}, {"values", std::move(values)}};
}

Json pairingToJson(const PairingValue& v) {
  return Json{{"exact", v.exact ? Json(v.exact->toString()) : Json(nullptr)},
              {"value", complexToJson(v.value)},
              {"pole_order", v.poleOrder},
              {"warning", v.warning}};
}

Json divisionToJson(const DivisionReport& r) {
  auto finite = [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag()) ? complexToJson(z) : Json(nullptr);
  };
  return Json{{"ok", r.ok},
              {"left", r.left.toString()},
              {"right", r.right.toString()},
              {"left_value", finite(r.leftValue)},
              {"right_value", finite(r.rightValue)},
              {"removed_poles", r.removedPoles},
              {"detail", r.detail}};
}

std::string dumpJson(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace padicfs
