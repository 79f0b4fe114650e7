// dynforge command line driver.
//
// Subcommands produce one JSON document on stdout (or --out). Timing and
// cache status go to stderr so that reruns of the same invocation emit
// byte-identical documents, cached or not. Exit code comes from the
// document's "status": PASS = 0, FAIL = 1, UNKNOWN or any error = 2.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "dynforge/certify.hpp"
#include "dynforge/config.hpp"
#include "dynforge/dynatomic.hpp"
#include "dynforge/errors.hpp"
#include "dynforge/expr.hpp"
#include "dynforge/julia.hpp"
#include "dynforge/puiseux.hpp"
#include "dynforge/report.hpp"
#include "dynforge/sha256.hpp"

namespace {

using namespace dynforge;
using ordered = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Inputs {
  std::string command;
  std::uint64_t q = 0;
  std::string num, den, preset;
  std::string out, cache_dir;
  std::uint64_t seed = Options{}.factor_seed;
  long prec = 0;
  int m = -1, n = -1, max_total = -1, depth = 3;
  bool force = false;
};

const Field& resolve_field(std::uint64_t q) {
  if (q < 2) throw error("--q must be a prime power, at least 2");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;  // smallest divisor > 1 is prime
  int s = 0;
  std::uint64_t acc = 1;
  while (acc < q) {
    acc *= p;
    ++s;
  }
  if (acc != q)
    throw error("--q must be a prime power (got " + std::to_string(q) + ")");
  return make_field(static_cast<long>(p), s);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

long parse_count(const std::string& s, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty())
    throw error(std::string("expected an integer ") + what + ", got '" + s +
                "'");
  return v;
}

BiPoly bi_one(FieldPtr f) {
  return BiPoly(f, {TPoly::constant(Fq(*f, 1))});
}

BiPoly bi_z(FieldPtr f) {
  return BiPoly(f, {TPoly(f), TPoly::constant(Fq(*f, 1))});
}

// Builds the family from --preset or --num/--den. For quad-affine the
// normal form section is filled in (valid JSON) before any throw.
RatFamily resolve_family(const Inputs& in, const Field& F,
                         std::string* normal_form) {
  FieldPtr f = &F;
  if (!in.preset.empty()) {
    std::string name = in.preset, params;
    if (auto colon = in.preset.find(':'); colon != std::string::npos) {
      name = in.preset.substr(0, colon);
      params = in.preset.substr(colon + 1);
    }
    if (name == "factored") {
      if (params.empty())
        throw error("preset factored needs roots: --preset factored:a1,a2,...");
      BiPoly a = bi_one(f);
      for (const std::string& part : split_list(params))
        a = a * (bi_z(f) - BiPoly::from_tpoly(parse_tpoly(part, f)));
      return RatFamily(a, bi_one(f));
    }
    if (name == "power-minus-t") {
      auto parts = split_list(params);
      if (params.empty() || parts.size() > 2)
        throw error(
            "preset power-minus-t needs degrees: --preset power-minus-t:d,e");
      long d = parse_count(parts[0], "degree d");
      long e = parts.size() == 2 ? parse_count(parts[1], "degree e") : 0;
      if (d < 2 || e < 0 || e >= d)
        throw error("preset power-minus-t needs d >= 2 and 0 <= e < d");
      std::string num = "z^" + std::to_string(d) + "-t";
      std::string den = e == 0 ? "1" : "z^" + std::to_string(e);
      return RatFamily(parse_poly(num, f), parse_poly(den, f));
    }
    if (name == "quad-affine") {
      auto parts = split_list(params);
      if (parts.size() != 2)
        throw error("preset quad-affine needs --preset quad-affine:b,c");
      TPoly one = TPoly::constant(Fq(F, 1));
      TPoly b = parse_tpoly(parts[0], f);
      TPoly c = parse_tpoly(parts[1], f);
      QuadraticNormalForm nf = normalize_quadratic(one, b, c);
      if (normal_form) {
        ordered j;
        j["fixed_equation"] = nf.fixed_equation.str();
        j["ext_degree"] = nf.ext_degree;
        j["u"] = nf.u ? ordered(nf.u->str("t")) : ordered(nullptr);
        j["s"] = nf.s ? ordered(nf.s->str("t")) : ordered(nullptr);
        j["isotrivial"] = nf.isotrivial;
        *normal_form = j.dump();
      }
      if (!nf.s)
        throw error(
            "quad-affine: the shift to the normal form lives in a quadratic "
            "extension; no rational family to certify");
      return RatFamily(BiPoly(f, {TPoly(f), *nf.s, one}), bi_one(f));
    }
    throw error("unknown preset '" + name +
                "' (have: factored, power-minus-t, quad-affine)");
  }
  if (in.num.empty())
    throw error("describe the family with --num (and --den) or --preset");
  if (!in.den.empty())
    return RatFamily(parse_poly(in.num, f), parse_poly(in.den, f));
  return parse_family(in.num, f);
}

// The cache key hashes everything that determines the document's bytes.
std::string cache_key(const Inputs& in, const RatFamily& fam) {
  std::ostringstream k;
  k << "schema=" << kSchemaVersion << "\ncommand=" << in.command
    << "\np=" << fam.field()->p() << "\ns=" << fam.field()->s()
    << "\nnum=" << fam.a().str() << "\nden=" << fam.b().str()
    << "\npreset=" << in.preset << "\nm=" << in.m << "\nn=" << in.n
    << "\nmax_total=" << in.max_total << "\nprec=" << in.prec
    << "\ndepth=" << in.depth << "\nseed=" << in.seed
    << "\nforce=" << (in.force ? 1 : 0) << "\n";
  return sha256_hex(k.str());
}

std::string cache_root(const Inputs& in) {
  if (!in.cache_dir.empty()) return in.cache_dir;
  if (const char* env = std::getenv("DYNFORGE_CACHE"))
    if (*env) return env;
  return {};
}

std::optional<std::string> cache_load(const std::string& dir,
                                      const std::string& key) {
  if (dir.empty()) return std::nullopt;
  std::ifstream f(std::filesystem::path(dir) / (key + ".json"),
                  std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Best effort, atomic: write next to the final name, then rename.
void cache_store(const std::string& dir, const std::string& key,
                 const std::string& doc) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return;
  auto final_path = std::filesystem::path(dir) / (key + ".json");
  auto tmp = std::filesystem::path(dir) /
             (key + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream f(tmp, std::ios::binary);
    f << doc;
    if (!f) {
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, final_path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

int status_code(const std::string& status) {
  if (status == "PASS") return 0;
  if (status == "FAIL") return 1;
  return 2;
}

std::string doc_status(const std::string& doc) {
  auto j = nlohmann::json::parse(doc, nullptr, false);
  if (j.is_discarded() || !j.contains("status") || !j["status"].is_string())
    return "UNKNOWN";
  return j["status"].get<std::string>();
}

void warn_if_unstabilized(const std::string& doc, const Inputs& in) {
  auto j = nlohmann::json::parse(doc, nullptr, false);
  if (j.is_discarded() || !j.contains("constants")) return;
  const auto& c = j["constants"];
  if (c.contains("stabilized") && c["stabilized"].is_boolean() &&
      !c["stabilized"].get<bool>())
    std::fprintf(stderr,
                 "dynforge %s: warning: constants did not stabilize at depth "
                 "%d; consider a larger --depth\n",
                 in.command.c_str(), in.depth);
}

int emit(const Inputs& in, const std::string& doc, bool cache_hit,
         Clock::time_point start) {
  warn_if_unstabilized(doc, in);
  if (!in.out.empty()) {
    std::ofstream f(in.out, std::ios::binary);
    f << doc << "\n";
    f.flush();
    if (!f) {
      std::fprintf(stderr, "dynforge: cannot write %s\n", in.out.c_str());
      return 2;
    }
  } else {
    std::fwrite(doc.data(), 1, doc.size(), stdout);
    std::fputc('\n', stdout);
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                Clock::now() - start)
                .count();
  std::fprintf(stderr, "dynforge %s: %lld ms%s\n", in.command.c_str(),
               static_cast<long long>(ms), cache_hit ? " (cache hit)" : "");
  return status_code(doc_status(doc));
}

std::string params_json(const Inputs& in, long resolved_prec) {
  ordered j;
  j["q"] = in.q;
  if (!in.preset.empty()) {
    j["preset"] = in.preset;
  } else {
    j["num"] = in.num;
    if (!in.den.empty()) j["den"] = in.den;
  }
  if (in.m >= 0) j["m"] = in.m;
  if (in.n >= 0) j["n"] = in.n;
  if (in.max_total >= 0) j["max_total"] = in.max_total;
  if (in.command != "certify" && in.command != "preper") j["depth"] = in.depth;
  if (resolved_prec > 0) j["prec"] = resolved_prec;
  j["seed"] = in.seed;
  if (in.force) j["force"] = true;
  return j.dump();
}

using Sections = std::vector<std::pair<std::string, std::string>>;

// Fiber, gonality bound, and point counts for one factor, exactly as
// growth_table fills them in; kept here so a size limit can be reported
// with the offending (m, n) attached.
void enrich(DynatomicFactorReport& rep, const FamilyConstants& fc,
            std::uint64_t q, long prec) {
  if (prec > 0)
    fiber_at_infinity(rep, prec);
  else
    fiber_at_infinity(rep);
  rep.gonality_lb = gonality_lower_bound(rep, fc.residue_lcm, fc.ram_lcm);
  std::vector<long> exts{1};
  if (fc.residue_lcm > 1) exts.push_back(fc.residue_lcm);
  for (long s : exts) {
    std::uint64_t size = 1;
    bool small = true;
    for (long i = 0; i < s && small; ++i) {
      size *= q;
      if (size > 256) small = false;
    }
    if (small) rep.counts[s] = count_points(rep, static_cast<int>(s));
  }
}

std::vector<DynatomicFactorReport> collect_factors(const RatFamily& fam,
                                                   const Inputs& in,
                                                   const FamilyConstants& fc) {
  std::uint64_t q = fam.field()->q();
  std::vector<DynatomicFactorReport> out;
  auto run_pair = [&](int m, int n) {
    try {
      for (DynatomicFactorReport& rep : dynatomic_factors(fam, m, n)) {
        enrich(rep, fc, q, in.prec);
        out.push_back(std::move(rep));
      }
    } catch (const size_limit_error& e) {
      throw size_limit_error(std::string(e.what()) + " at (m, n) = (" +
                             std::to_string(m) + ", " + std::to_string(n) +
                             ")");
    }
  };
  if (in.max_total >= 1) {
    for (int total = 1; total <= in.max_total; ++total)
      for (int n = 1; n <= total; ++n) run_pair(total - n, n);
  } else {
    run_pair(in.m, in.n);
  }
  return out;
}

int run_certify(const Inputs& in) {
  auto start = Clock::now();
  const Field& F = resolve_field(in.q);
  std::string normal_form;
  RatFamily fam = resolve_family(in, F, &normal_form);
  std::string key = cache_key(in, fam);
  std::string dir = cache_root(in);
  if (auto hit = cache_load(dir, key)) return emit(in, *hit, true, start);

  CertReport cert = check_conditions(fam);
  Sections sections;
  sections.emplace_back("command", json_quote(in.command));
  sections.emplace_back("status", json_quote(to_string(cert.overall)));
  sections.emplace_back("params", params_json(in, 0));
  sections.emplace_back("family", json_family(fam));
  if (!normal_form.empty()) sections.emplace_back("normal_form", normal_form);
  sections.emplace_back("certificate", json_certificate(cert));
  sections.emplace_back("cache_key", json_quote(key));
  std::string doc = json_envelope(sections);
  cache_store(dir, key, doc);
  return emit(in, doc, false, start);
}

int run_constants(const Inputs& in) {
  auto start = Clock::now();
  const Field& F = resolve_field(in.q);
  std::string normal_form;
  RatFamily fam = resolve_family(in, F, &normal_form);
  std::string key = cache_key(in, fam);
  std::string dir = cache_root(in);
  if (auto hit = cache_load(dir, key)) return emit(in, *hit, true, start);

  FamilyConstants fc = family_constants(fam, in.depth, in.prec);
  Sections sections;
  sections.emplace_back("command", json_quote(in.command));
  sections.emplace_back("status", json_quote("PASS"));
  sections.emplace_back("params", params_json(in, in.prec));
  sections.emplace_back("family", json_family(fam));
  if (!normal_form.empty()) sections.emplace_back("normal_form", normal_form);
  sections.emplace_back("constants", json_constants(fc));
  sections.emplace_back("cache_key", json_quote(key));
  std::string doc = json_envelope(sections);
  cache_store(dir, key, doc);
  return emit(in, doc, false, start);
}

// Shared by dynatomic (single pair or table) and report (always a table).
int run_factor_command(const Inputs& in) {
  auto start = Clock::now();
  const Field& F = resolve_field(in.q);
  std::string normal_form;
  RatFamily fam = resolve_family(in, F, &normal_form);
  std::string key = cache_key(in, fam);
  std::string dir = cache_root(in);
  if (auto hit = cache_load(dir, key)) return emit(in, *hit, true, start);

  std::optional<CertReport> cert;
  std::string status = "PASS";
  if (!in.force) {
    cert = check_conditions(fam);
    status = to_string(cert->overall);
  }
  Sections sections;
  sections.emplace_back("command", json_quote(in.command));
  sections.emplace_back("status", json_quote(status));
  sections.emplace_back("params", params_json(in, in.prec));
  sections.emplace_back("family", json_family(fam));
  if (!normal_form.empty()) sections.emplace_back("normal_form", normal_form);
  if (cert) sections.emplace_back("certificate", json_certificate(*cert));
  if (status == "PASS") {
    FamilyConstants fc = family_constants(fam, in.depth, in.prec);
    std::vector<DynatomicFactorReport> table = collect_factors(fam, in, fc);
    sections.emplace_back("constants", json_constants(fc));
    sections.emplace_back("factors", json_factor_table(table));
  }
  sections.emplace_back("cache_key", json_quote(key));
  std::string doc = json_envelope(sections);
  cache_store(dir, key, doc);
  return emit(in, doc, false, start);
}

int run_dynatomic(Inputs in) {
  bool pair_mode = in.m >= 0 || in.n >= 0;
  bool table_mode = in.max_total >= 0;
  if (pair_mode == table_mode)
    throw error("give exactly one of --m/--n or --max-total");
  if (pair_mode && (in.m < 0 || in.n < 0)) throw error("give both --m and --n");
  if (pair_mode && in.n < 1)
    throw error("need n >= 1; the pair (m, 0) names no cycle");
  if (table_mode && in.max_total < 1) throw error("need --max-total >= 1");
  return run_factor_command(in);
}

int run_report(Inputs in) {
  if (in.m >= 0 || in.n >= 0)
    throw error("report builds the full table; use --max-total, not --m/--n");
  if (in.max_total < 0) in.max_total = 3;
  if (in.max_total < 1) throw error("need --max-total >= 1");
  return run_factor_command(in);
}

int run_preper(const Inputs& in) {
  auto start = Clock::now();
  if (in.m < 0 || in.n < 0) throw error("give both --m and --n");
  if (in.n < 1) throw error("need n >= 1; the pair (m, 0) names no cycle");
  const Field& F = resolve_field(in.q);
  std::string normal_form;
  RatFamily fam = resolve_family(in, F, &normal_form);
  std::string key = cache_key(in, fam);
  std::string dir = cache_root(in);
  if (auto hit = cache_load(dir, key)) return emit(in, *hit, true, start);

  BranchSystem bs =
      in.prec > 0 ? branch_system(fam, in.prec) : branch_system(fam);
  std::vector<LabeledPoint> pts = preperiodic_points(bs, in.m, in.n);

  // Cross-check: each point must kill the dynatomic relation to within the
  // evaluation loss bound prec - D * R (degree D, outer log-radius R).
  BiPoly raw = dynatomic_raw(fam, in.m, in.n).dehom();
  SeriesPoly sp = to_series_poly(raw);
  long D = raw.deg_z();
  Rational threshold =
      Rational(bs.rel_prec) - Rational(D) * bs.outer_radius;
  ordered val;
  val["relation_degree"] = D;
  val["outer_radius"] = bs.outer_radius.str();
  val["threshold"] = threshold.str();
  bool ok = true;
  ordered residuals = ordered::array();
  for (const LabeledPoint& pt : pts) {
    PuiseuxSeries r = series_poly_eval(sp, pt.point);
    ordered e;
    e["nonzero"] = r.known_nonzero();
    e["prec"] = r.prec().str();
    residuals.push_back(e);
    ok = ok && !r.known_nonzero();
  }
  val["residuals"] = residuals;
  val["ok"] = ok;

  Sections sections;
  sections.emplace_back("command", json_quote(in.command));
  sections.emplace_back("status", json_quote(ok ? "PASS" : "FAIL"));
  sections.emplace_back("params", params_json(in, bs.rel_prec));
  sections.emplace_back("family", json_family(fam));
  if (!normal_form.empty()) sections.emplace_back("normal_form", normal_form);
  sections.emplace_back("points", json_points(pts));
  sections.emplace_back("validation", val.dump());
  sections.emplace_back("cache_key", json_quote(key));
  std::string doc = json_envelope(sections);
  cache_store(dir, key, doc);
  return emit(in, doc, false, start);
}

void add_family_flags(CLI::App* cmd, Inputs& in, bool with_force) {
  cmd->add_option("--q", in.q,
                  "field size q = p^s (prime power, at most 65536)")
      ->required();
  cmd->add_option("--num", in.num,
                  "numerator in z and t; one top-level / splits num/den");
  cmd->add_option("--den", in.den, "denominator in z and t");
  cmd->add_option(
      "--preset", in.preset,
      "family preset: factored:a1,a2,... | power-minus-t:d,e | "
      "quad-affine:b,c");
  cmd->add_option("--out", in.out, "write the document here instead of stdout");
  cmd->add_option("--cache-dir", in.cache_dir,
                  "document cache directory (default: $DYNFORGE_CACHE)");
  cmd->add_option("--seed", in.seed,
                  "seed for the randomized factorization steps");
  if (with_force)
    cmd->add_flag("--force", in.force,
                  "skip the certification gate and compute anyway");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "certify and analyze one-parameter families of rational maps over "
      "F_q(t)"};
  app.require_subcommand(1);
  Inputs in;

  CLI::App* certify = app.add_subcommand(
      "certify", "run the gate conditions; exit 0 PASS, 1 FAIL, 2 UNKNOWN");
  add_family_flags(certify, in, false);

  CLI::App* dynatomic = app.add_subcommand(
      "dynatomic",
      "factor dynatomic polynomials; fibers, point counts, gonality bounds");
  add_family_flags(dynatomic, in, true);
  dynatomic->add_option("--m", in.m, "preperiod (with --n)");
  dynatomic->add_option("--n", in.n, "period (with --m)");
  dynatomic->add_option("--max-total", in.max_total,
                        "tabulate every pair with m + n up to this");
  dynatomic->add_option("--prec", in.prec,
                        "relative series precision (0 = automatic)");
  dynatomic->add_option("--depth", in.depth,
                        "backward orbit depth for the constants");

  CLI::App* constants = app.add_subcommand(
      "constants",
      "ramification and residue degree bounds from the branch data");
  add_family_flags(constants, in, false);
  constants->add_option("--depth", in.depth, "backward orbit depth");
  constants->add_option("--prec", in.prec,
                        "relative series precision (0 = automatic)");

  CLI::App* preper = app.add_subcommand(
      "preper", "preperiodic points as Puiseux series with itineraries");
  add_family_flags(preper, in, false);
  preper->add_option("--m", in.m, "preperiod")->required();
  preper->add_option("--n", in.n, "period")->required();
  preper->add_option("--prec", in.prec,
                     "relative series precision (0 = automatic)");

  CLI::App* report = app.add_subcommand(
      "report", "combined document: certificate, constants, factor table");
  add_family_flags(report, in, true);
  report->add_option("--max-total", in.max_total,
                     "tabulate every pair with m + n up to this (default 3)");
  report->add_option("--prec", in.prec,
                     "relative series precision (0 = automatic)");
  report->add_option("--depth", in.depth,
                     "backward orbit depth for the constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  dynforge::options().factor_seed = in.seed;
  in.command = app.get_subcommands().front()->get_name();
  try {
    if (in.command == "certify") return run_certify(in);
    if (in.command == "dynatomic") return run_dynatomic(in);
    if (in.command == "constants") return run_constants(in);
    if (in.command == "preper") return run_preper(in);
    if (in.command == "report") return run_report(in);
    std::fprintf(stderr, "dynforge: unknown command %s\n", in.command.c_str());
    return 2;
  } catch (const dynforge::error& e) {
    std::fprintf(stderr, "dynforge %s: %s\n", in.command.c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "dynforge %s: %s\n", in.command.c_str(), e.what());
    return 2;
  }
}
