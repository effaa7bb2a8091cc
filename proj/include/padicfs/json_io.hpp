#pragma once

#include <string>

#include "json.hpp"
#include "padicfs/fundsol.hpp"
#include "padicfs/grid.hpp"
#include "padicfs/operator.hpp"
#include "padicfs/ratfunc.hpp"
#include "padicfs/sb_function.hpp"
#include "padicfs/zeta.hpp"

namespace padicfs {

using Json = nlohmann::json;

/// Bumped whenever a cached or emitted schema changes.
inline constexpr int kFormatVersion = 1;

/// "%.17g".
std::string formatDouble(double x);
Json complexToJson(Complex z);

Json ballToJson(const Ball& b);
Ball ballFromJson(const Json& j, long p);

/// {"n", "p", "terms": [{"level", "center", "coeff": {"re", "im"}}]}. Exact coefficients outside
/// Q(i) also carry "exact" in the cyclotomic text form.
Json sbToJson(const ExactSB& f);
Json sbToJson(const ComplexSB& f);
/// Exact reading: each coefficient needs "exact" or rational "re"/"im" strings.
ExactSB exactSBFromJson(const Json& j);
ComplexSB complexSBFromJson(const Json& j);
/// True when every coefficient of the JSON function can be read exactly.
bool isExactSBJson(const Json& j);

/// {"p", "num": [[k, "c"]], "den": [[a, b], ...]} with repeated factors listed repeatedly.
Json ratFuncToJson(const RatFunc& r);
RatFunc ratFuncFromJson(const Json& j);

Json zetaResultToJson(const ZetaResult& z);
ZetaResult zetaResultFromJson(const Json& j);

Json laurentToJson(const LaurentSeries& L);
Json bracketToJson(const ZetaBracket& b);
Json applyReportToJson(const ApplyReport& r);
Json gridToJson(const GridFunction& g);
Json pairingToJson(const PairingValue& v);
Json divisionToJson(const DivisionReport& r);

/// Pretty-printed with a trailing newline; keys sorted, so output is deterministic.
std::string dumpJson(const Json& j);

}  // namespace padicfs
