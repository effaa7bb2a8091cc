#include "padicfs/cli.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "padicfs/parse.hpp"

namespace padicfs {

namespace {

struct Options {
  long p = 0;
  std::string f;
  int n = 0;
  std::string beta = "1";
  std::string chi;
  std::string ball;
  std::string phi;
  int depth = kDefaultZetaDepth;
  std::string window = "2,2";
  std::uint64_t seed = 1;
  bool json = false;
  bool allowPartial = false;
  std::string cacheDir;
  std::string out;
  int trials = 20;
  int maxBalls = 30;
  long maxLevel = 4;
  int terms = 2;
  double s0 = 1.0;
  int oracleDepth = 20;
  std::string convention = "compensated";
};

Json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return Json::parse(in);
}

void writeAtomically(const std::filesystem::path& path, const std::string& content) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream o(tmp, std::ios::binary);
    if (!o) throw Error("cannot write " + tmp.string());
    o << content;
    if (!o) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

/// Everything a command needs, resolved from the options and input files.
struct Context {
  const Options& o;
  std::optional<Json> file;
  long p = 0;
  int n = 1;
  Polynomial f;

  explicit Context(const Options& opts, const std::string& inputPath) : o(opts) {
    if (!inputPath.empty()) file = readJsonFile(inputPath);
    p = o.p;
    if (p == 0 && file) p = file->at("p").get<long>();
    if (p == 0) throw Error("--p is required");
    if (!isPrime(p)) throw Error("--p must be prime, got " + std::to_string(p));
    if (file && file->at("p").get<long>() != p) throw Error("input file prime differs from --p");
    if (o.n > 0) {
      n = o.n;
    } else if (file) {
      n = file->at("n").get<int>();
    } else if (!o.ball.empty()) {
      n = parseBall(o.ball, p).dimension();
    } else {
      n = inferDimension(o.f);
    }
    if (o.f.empty()) throw Error("--f is required");
    f = parsePolynomial(o.f, n);
  }

  std::optional<MultCharacter> chi() const {
    if (o.chi.empty()) return std::nullopt;
    const auto comma = o.chi.find(',');
    if (comma == std::string::npos) throw Error("--chi expects d,g");
    return MultCharacter(p, std::stol(o.chi.substr(0, comma)), std::stol(o.chi.substr(comma + 1)));
  }

  SymbolSpec symbol() const {
    SymbolSpec sym{f, Rational(1), std::nullopt, chi()};
    try {
      sym.beta = parseRational(o.beta);
    } catch (const std::invalid_argument&) {
      std::size_t used = 0;
      double b = 0.0;
      try {
        b = std::stod(o.beta, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != o.beta.size() || used == 0) throw Error("--beta expects a rational a/b or a float");
      sym.numericBeta = Complex(b, 0.0);
    }
    sym.validate();
    return sym;
  }

  bool exactInput() const { return !file || isExactSBJson(*file); }

  ExactSB exactInputFunction() const {
    if (file) {
      ExactSB phi = exactSBFromJson(*file);
      if (phi.dimension() != n) throw Error("input function dimension differs from the polynomial");
      return phi;
    }
    if (!o.ball.empty()) {
      Ball b = parseBall(o.ball, p);
      if (b.dimension() != n) throw Error("--ball dimension differs from the polynomial");
      return ExactSB::indicator(b);
    }
    return ExactSB::indicator(Ball::unit(p, n));
  }

  ComplexSB numericInputFunction() const {
    if (exactInput()) return toComplexSB(exactInputFunction());
    ComplexSB phi = complexSBFromJson(*file);
    if (phi.dimension() != n) throw Error("input function dimension differs from the polynomial");
    return phi;
  }
};

void emit(const Options& o, std::ostream& out, const Json& j) {
  const std::string text = dumpJson(j);
  if (o.out.empty()) {
    out << text;
  } else {
    writeAtomically(o.out, text);
  }
}

Json undecidedJson(const std::vector<UndecidedBall>& balls) {
  Json list = Json::array();
  for (const auto& u : balls) list.push_back(Json{{"ball", ballToJson(u.ball)}, {"sup_bound", u.supBound}});
  return list;
}

Json polesJson(const RatFunc& r) {
  Json poles = Json::array();
  for (const auto& pole : polesOf(r)) {
    poles.push_back(Json{{"real_part", toString(pole.realPart)},
                         {"factor", pole.factor.toString(r.p())},
                         {"multiplicity", pole.multiplicity}});
  }
  return poles;
}

int cmdZeta(const Options& o, std::ostream& out, std::ostream& err) {
  Context ctx(o, o.phi);
  ZetaResult z = zetaOf(ctx.f, ctx.chi(), ctx.exactInputFunction(), o.depth);
  z.value = cancelled(z.value);
  if (o.json) {
    emit(o, out,
         Json{{"zeta", ratFuncToJson(z.value)},
              {"factored", z.value.toString()},
              {"poles", polesJson(z.value)},
              {"certified", z.certified},
              {"undecided", undecidedJson(z.undecided)}});
  } else {
    out << z.value.toString() << "\n";
    for (const auto& pole : polesOf(z.value)) {
      out << "pole Re(s) = " << toString(pole.realPart) << " from " << pole.factor.toString(ctx.p)
          << " multiplicity " << pole.multiplicity << "\n";
    }
  }
  if (z.certified) return kExitOk;
  err << "uncertified: " << z.undecided.size() << " undecided ball(s)\n";
  for (const auto& u : z.undecided) err << "  " << u.ball.toString() << " sup|f| <= " << formatDouble(u.supBound) << "\n";
  return o.allowPartial ? kExitOk : kExitUncertified;
}

int cmdLaurent(const Options& o, std::ostream& out) {
  Context ctx(o, o.phi);
  SymbolSpec sym = ctx.symbol();
  if (!sym.hasExactBeta()) throw Error("laurent needs a rational --beta");
  ZetaResult z = zetaOf(ctx.f, sym.chi, ctx.exactInputFunction(), o.depth);
  if (!z.certified) throw UncertifiedError("zeta function not certified", z.undecided);
  LaurentSeries L = laurentExpand(z.value, sym.beta, o.terms);
  if (o.json) {
    emit(o, out, laurentToJson(L));
  } else {
    for (int m = L.order; m <= L.highest(); ++m) {
      out << "c" << m << " = " << L.coefficient(m).toString() << "  (" << formatDouble(L.render(m).real());
      if (L.render(m).imag() != 0.0) out << " + " << formatDouble(L.render(m).imag()) << "i";
      out << ")\n";
    }
  }
  return kExitOk;
}

int cmdOracle(const Options& o, std::ostream& out) {
  Context ctx(o, o.phi);
  const auto chi = ctx.chi();
  const ExactSB phi = ctx.exactInputFunction();
  ZetaBracket bracket = truncatedZeta(ctx.f, chi, phi, Complex(o.s0, 0.0), o.oracleDepth);
  ZetaResult z = zetaOf(ctx.f, chi, phi, o.depth);
  if (!z.certified) throw UncertifiedError("zeta function not certified", z.undecided);
  const Complex engine = evaluateRatFunc(z.value, Complex(o.s0, 0.0));
  const bool inside = bracket.contains(engine);
  if (o.json) {
    emit(o, out, Json{{"bracket", bracketToJson(bracket)}, {"engine", complexToJson(engine)}, {"contains", inside}});
  } else {
    out << "engine " << formatDouble(engine.real()) << " bracket center " << formatDouble(bracket.center.real())
        << " radius " << formatDouble(bracket.radius) << (inside ? " contained" : " NOT contained") << "\n";
  }
  return inside ? kExitOk : kExitVerification;
}

int cmdApply(const Options& o, std::ostream& out) {
  Context ctx(o, o.phi);
  SymbolSpec sym = ctx.symbol();
  ApplyReport r = ctx.exactInput() ? applyOperator(sym, ctx.exactInputFunction(), o.depth)
                                   : applyOperator(sym, ctx.numericInputFunction(), o.depth);
  emit(o, out, applyReportToJson(r));
  return kExitOk;
}

Resolution parseWindow(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error("--window expects M,N");
  return Resolution{std::stol(text.substr(0, comma)), std::stol(text.substr(comma + 1))};
}

int cmdSolve(const Options& o, std::ostream& out) {
  Context ctx(o, o.phi);
  SymbolSpec sym = ctx.symbol();
  const Resolution window = parseWindow(o.window);
  GridFunction u = ctx.exactInput() ? solve(sym, ctx.exactInputFunction(), window, o.depth)
                                    : solve(sym, ctx.numericInputFunction(), window, o.depth);
  emit(o, out, gridToJson(u));
  return kExitOk;
}

int cmdPair(const Options& o, std::ostream& out, bool fundamental) {
  Context ctx(o, o.phi);
  SymbolSpec sym = ctx.symbol();
  PairingValue v;
  if (ctx.exactInput()) {
    const ExactSB phi = ctx.exactInputFunction();
    v = fundamental ? pairE(sym, phi, o.depth) : pairT(sym, phi, o.depth);
  } else {
    const ComplexSB phi = ctx.numericInputFunction();
    v = fundamental ? pairE(sym, phi, o.depth) : pairT(sym, phi, o.depth);
  }
  emit(o, out, pairingToJson(v));
  return kExitOk;
}

int cmdVerify(const Options& o, std::ostream& out) {
  Context ctx(o, "");
  SymbolSpec sym = ctx.symbol();
  if (!sym.hasExactBeta()) throw Error("verify needs a rational --beta");
  TwistConvention convention;
  if (o.convention == "compensated") {
    convention = TwistConvention::Compensated;
  } else if (o.convention == "literal") {
    convention = TwistConvention::Literal;
  } else {
    throw Error("--convention must be compensated or literal");
  }
  std::mt19937_64 rng(o.seed);
  Json trials = Json::array();
  bool allOk = true;
  for (int i = 0; i < o.trials; ++i) {
    ExactSB phi = randomTestFunction(rng, ctx.p, ctx.n, o.maxBalls, o.maxLevel);
    DivisionReport r = verifyDivision(sym, phi, convention, o.depth);
    allOk = allOk && r.ok;
    Json entry = divisionToJson(r);
    entry["trial"] = i;
    trials.push_back(std::move(entry));
  }
  emit(o, out, Json{{"all_ok", allOk}, {"trials", std::move(trials)}, {"seed", o.seed}});
  return allOk ? kExitOk : kExitVerification;
}

void addCommon(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "prime p");
  sub->add_option("--f", o.f, "polynomial, e.g. \"x1^2+x2^2\"");
  sub->add_option("--n", o.n, "number of variables (default: inferred)");
  sub->add_option("--chi", o.chi, "multiplicative character d,g");
  sub->add_option("--depth", o.depth, "zeta recursion depth or operator refinement level");
  sub->add_flag("--json", o.json, "JSON output");
  sub->add_flag("--allow-partial", o.allowPartial, "zeta: print a partial result and exit 0");
  sub->add_option("--cache-dir", o.cacheDir, "persistent zeta cache directory");
  sub->add_option("--out", o.out, "write the output here instead of stdout");
}

void addInput(CLI::App* sub, Options& o, const std::string& name) {
  sub->add_option(name, o.phi, "input SB function (JSON)");
  sub->add_option("--ball", o.ball, "indicator of the ball \"c1,..,cn@e\"");
}

}  // namespace

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Ball parseBall(const std::string& text, long p) {
  const auto at = text.find('@');
  if (at == std::string::npos) throw Error("ball expects \"c1,..,cn@e\"");
  std::vector<Rational> center;
  std::stringstream coords(text.substr(0, at));
  std::string c;
  while (std::getline(coords, c, ',')) center.push_back(parseRational(c));
  return Ball(p, std::stol(text.substr(at + 1)), std::move(center));
}

ExactSB randomTestFunction(std::mt19937_64& rng, long p, int n, int maxBalls, long maxLevel) {
  std::uniform_int_distribution<int> count(1, maxBalls);
  std::uniform_int_distribution<long> level(0, maxLevel);
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  std::vector<ExactSB::Term> raw;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    const long e = level(rng);
    long span = 1;
    for (long j = 0; j < e; ++j) span *= p;
    std::uniform_int_distribution<long> digit(0, span - 1);
    std::vector<Rational> center(n);
    for (auto& x : center) x = digit(rng);
    Rational coef(num(rng), den(rng));
    coef.canonicalize();
    if (coef == 0) coef = 1;
    raw.emplace_back(Ball(p, e, std::move(center)), Cyclo(coef));
  }
  return ExactSB::fromRaw(p, n, std::move(raw));
}

DiskZetaStore::DiskZetaStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path DiskZetaStore::pathFor(const std::string& key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json",
                static_cast<unsigned long long>(fnv1a("v" + std::to_string(kFormatVersion) + "|" + key)));
  return dir_ / name;
}

std::optional<ZetaResult> DiskZetaStore::load(const std::string& key) {
  std::ifstream in(pathFor(key));
  if (!in) return std::nullopt;
  try {
    Json j = Json::parse(in);
    if (j.at("version").get<int>() != kFormatVersion || j.at("key").get<std::string>() != key) return std::nullopt;
    return zetaResultFromJson(j.at("result"));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void DiskZetaStore::save(const std::string& key, const ZetaResult& result) {
  Json j{{"version", kFormatVersion}, {"key", key}, {"result", zetaResultToJson(result)}};
  writeAtomically(pathFor(key), dumpJson(j));
}

int runCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Igusa zeta functions and fundamental solutions over Q_p", "padicfs"};
  app.require_subcommand(1);

  CLI::App* zeta = app.add_subcommand("zeta", "local zeta function as a rational function of t = p^-s");
  addCommon(zeta, o);
  addInput(zeta, o, "--phi");

  CLI::App* laurent = app.add_subcommand("laurent", "Laurent expansion at s = -beta");
  addCommon(laurent, o);
  addInput(laurent, o, "--phi");
  laurent->add_option("--beta", o.beta, "expansion point -beta (rational)");
  laurent->add_option("--terms", o.terms, "highest coefficient index");

  CLI::App* oracle = app.add_subcommand("oracle", "bracket the zeta value by direct integration");
  addCommon(oracle, o);
  addInput(oracle, o, "--phi");
  oracle->add_option("--s0", o.s0, "real evaluation point, > 0");
  oracle->add_option("--D", o.oracleDepth, "oracle depth");

  CLI::App* apply = app.add_subcommand("apply", "apply the pseudo-differential operator");
  addCommon(apply, o);
  addInput(apply, o, "--in");
  apply->add_option("--beta", o.beta, "exponent (rational a/b or float)");

  CLI::App* solveCmd = app.add_subcommand("solve", "samples of u = E*g on a window");
  addCommon(solveCmd, o);
  addInput(solveCmd, o, "--g");
  solveCmd->add_option("--beta", o.beta, "exponent (rational a/b or float)");
  solveCmd->add_option("--window", o.window, "M,N: support p^-M Z^n, cells p^N Z^n");

  CLI::App* verify = app.add_subcommand("verify", "check the division identity on random test functions");
  addCommon(verify, o);
  verify->add_option("--beta", o.beta, "exponent (rational)");
  verify->add_option("--trials", o.trials, "number of random test functions");
  verify->add_option("--seed", o.seed, "random seed");
  verify->add_option("--max-balls", o.maxBalls, "balls per test function");
  verify->add_option("--max-level", o.maxLevel, "finest ball level");
  verify->add_option("--convention", o.convention, "twisted pairing: compensated or literal");

  CLI::App* pairT = app.add_subcommand("pair-t", "pair the division functional T with a test function");
  addCommon(pairT, o);
  addInput(pairT, o, "--phi");
  pairT->add_option("--beta", o.beta, "exponent (rational a/b or float)");

  CLI::App* pairE = app.add_subcommand("pair-e", "pair the fundamental solution E with a test function");
  addCommon(pairE, o);
  addInput(pairE, o, "--phi");
  pairE->add_option("--beta", o.beta, "exponent (rational a/b or float)");

  std::vector<std::string> argv{"padicfs"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> cargs;
  for (const auto& a : argv) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (apply->parsed() && apply->count("--depth") == 0) o.depth = 6;

  struct StoreGuard {
    ~StoreGuard() { setZetaStore(nullptr); }
  } guard;
  try {
    if (!o.cacheDir.empty()) setZetaStore(std::make_shared<DiskZetaStore>(o.cacheDir));
    if (zeta->parsed()) return cmdZeta(o, out, err);
    if (laurent->parsed()) return cmdLaurent(o, out);
    if (oracle->parsed()) return cmdOracle(o, out);
    if (apply->parsed()) return cmdApply(o, out);
    if (solveCmd->parsed()) return cmdSolve(o, out);
    if (verify->parsed()) return cmdVerify(o, out);
    if (pairT->parsed()) return cmdPair(o, out, false);
    if (pairE->parsed()) return cmdPair(o, out, true);
  } catch (const UncertifiedError& e) {
    err << "uncertified: " << e.what() << "\n";
    for (const auto& u : e.undecided) err << "  " << u.ball.toString() << " sup|f| <= " << formatDouble(u.supBound) << "\n";
    if (o.json) out << dumpJson(Json{{"error", e.what()}, {"undecided", undecidedJson(e.undecided)}});
    return kExitUncertified;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace padicfs
