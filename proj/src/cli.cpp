#include "hyp32/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "hyp32/identities.hpp"
#include "hyp32/transforms.hpp"
#include "hyp32/verify.hpp"

namespace hyp32 {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError {
  std::string what;
};

std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Cx require_complex(const std::string& flag, const std::string& text) {
  auto v = parse_complex(text);
  if (!v) throw UsageError{flag + ": expected re or re,im, got '" + text + "'"};
  return *v;
}

std::pair<int, int> require_range(const std::string& flag, const std::string& text) {
  auto r = parse_range(text);
  if (!r) throw UsageError{flag + ": expected lo:hi, got '" + text + "'"};
  return *r;
}

Tolerance tolerance_from_env(double rel_tol) {
  Tolerance t;
  t.rel_tol = rel_tol;
  if (const char* env = std::getenv("HYP32_MAX_TERMS")) {
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(env, &end, 10);
    if (*env == '\0' || *end != '\0' || errno == ERANGE || v < 1) {
      throw UsageError{"HYP32_MAX_TERMS must be a positive integer"};
    }
    t.max_terms = v;
  }
  if (!(t.rel_tol > 0.0)) throw UsageError{"--tol must be positive"};
  return t;
}

Precision parse_precision(const std::string& s) {
  if (s == "binary128") return Precision::binary128;
  if (s == "binary64") return Precision::binary64;
  throw UsageError{"--precision: expected binary128 or binary64"};
}

ojson cx_json(Cx z) {
  ojson j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

struct Evaluated {
  ValueWithError value;
  std::string method;
};

// One cell of eval/table.
Evaluated evaluate_with(const std::string& method, const Params3F2NegDiff& p,
                        std::optional<Cx> z, const Tolerance& tol, Precision prec) {
  if (z && *z != Cx{1.0, 0.0}) {
    if (method == "oracle") return {evaluate_3f2(p.spec(*z), tol), "series"};
    if (method != "auto" && method != "ka") {
      throw UsageError{"--z != 1 supports --method auto, ka or oracle"};
    }
    return {assemble(karlsson_z_reduce(p, *z), tol), "ka"};
  }
  if (method == "oracle") return {sum_3f2_unit_oracle(p, tol), "oracle"};
  if (method == "auto") {
    AutoResult r = evaluate_auto(p, tol);
    return {std::move(r.value), r.used_oracle ? "oracle" : std::string(to_string(r.method))};
  }
  auto id = identity_from_key(method);
  if (!id) throw UsageError{"--method: unknown method '" + method + "'"};
  return {identity_info(*id).evaluate(p, prec), method};
}

ojson abs_err_json(double e) { return std::isfinite(e) ? ojson(e) : ojson(nullptr); }

void print_value(std::ostream& out, const std::string& format, const Evaluated& e) {
  const ValueWithError& v = e.value;
  if (format == "json") {
    ojson j;
    j["value"] = cx_json(v.value);
    j["abs_err"] = abs_err_json(v.abs_err);
    j["status"] = std::string(to_string(v.status));
    j["method"] = e.method;
    out << j.dump(2) << '\n';
  } else if (format == "csv") {
    out << "re,im,abs_err,status,method\n"
        << num(v.value.real()) << ',' << num(v.value.imag()) << ',' << num(v.abs_err) << ','
        << csv_field(std::string(to_string(v.status))) << ',' << csv_field(e.method) << '\n';
  } else {
    out << "value:   " << num(v.value.real()) << (v.value.imag() < 0 ? " - " : " + ")
        << num(std::abs(v.value.imag())) << "i\n"
        << "abs_err: " << num(v.abs_err) << '\n'
        << "status:  " << to_string(v.status) << '\n'
        << "method:  " << e.method << '\n';
    if (!v.reason.empty()) out << "reason:  " << v.reason << '\n';
  }
}

void print_report(std::ostream& out, const std::string& format, const VerifyReport& r) {
  if (format == "json") {
    out << report_to_json(r) << '\n';
    return;
  }
  if (format == "csv") {
    out << "identity,reference,samples,seed,tol,max_rel_err,median_rel_err,excluded,failures\n"
        << csv_field(r.identity) << ',' << csv_field(r.reference) << ',' << r.samples << ','
        << r.seed << ',' << num(r.tol) << ',' << num(r.max_rel_err) << ','
        << num(r.median_rel_err) << ',' << r.excluded << ',' << r.failures.size() << '\n';
    return;
  }
  out << "identity:       " << r.identity << " (reference " << r.reference << ")\n"
      << "samples:        " << r.samples << " (excluded " << r.excluded << ")\n"
      << "seed:           " << r.seed << '\n'
      << "tol:            " << num(r.tol) << '\n'
      << "max_rel_err:    " << num(r.max_rel_err) << '\n'
      << "median_rel_err: " << num(r.median_rel_err) << '\n'
      << "failures:       " << r.failures.size() << '\n';
  for (const Failure& f : r.failures) {
    out << "  rel_err " << num(f.rel_err) << " at";
    for (const NamedValue& v : f.params) {
      out << ' ' << v.name << '=';
      if (v.integer) {
        out << static_cast<long>(v.value.real());
      } else {
        out << num(v.value.real()) << ',' << num(v.value.imag());
      }
    }
    out << '\n';
  }
}

}  // namespace

int exit_code(Status s) {
  switch (s) {
    case Status::ok:
      return kExitOk;
    case Status::slow_convergence:
      return kExitFailures;
    case Status::near_singular:
      return kExitNearSingular;
    case Status::domain_violation:
      return kExitDomain;
  }
  return kExitDomain;
}

std::optional<Cx> parse_complex(const std::string& text) {
  if (text.find_first_of(" \t\n") != std::string::npos) return std::nullopt;
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    auto re = parse_double(text);
    if (!re) return std::nullopt;
    return Cx{*re, 0.0};
  }
  auto re = parse_double(text.substr(0, comma));
  auto im = parse_double(text.substr(comma + 1));
  if (!re || !im) return std::nullopt;
  return Cx{*re, *im};
}

std::optional<std::pair<int, int>> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  auto to_int = [](const std::string& s) -> std::optional<int> {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (*end != '\0' || errno == ERANGE || v < 0 || v > 1'000'000) return std::nullopt;
    return static_cast<int>(v);
  };
  auto lo = to_int(text.substr(0, colon));
  auto hi = to_int(text.substr(colon + 1));
  if (!lo || !hi || *lo > *hi) return std::nullopt;
  return std::pair{*lo, *hi};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate and verify 3F2(a, b, c; b+1+m, c+1+n; 1)", "hyp32"};
  app.require_subcommand(1);
  std::string format = "text";
  const std::vector<std::string> formats{"text", "json", "csv"};

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate one value");
  std::string a_s, b_s, c_s, z_s, method = "auto", precision = "binary128";
  int m = 0, n = 0;
  double tol = 1e-10;
  eval->add_option("--a", a_s, "a as re[,im]")->required();
  eval->add_option("--b", b_s, "b as re[,im]")->required();
  eval->add_option("--c", c_s, "c as re[,im]")->required();
  eval->add_option("--m", m, "nonnegative integer")->required()->check(CLI::NonNegativeNumber);
  eval->add_option("--n", n, "nonnegative integer")->required()->check(CLI::NonNegativeNumber);
  eval->add_option("--method", method,
                   "zy|zx|tt|tc|mn|kb|om|mp|fa|fb|p7|a1|oracle|auto (ka with --z)");
  eval->add_option("--z", z_s, "argument z != 1 selects the z-dependent reduction");
  eval->add_option("--tol", tol, "relative tolerance of series evaluation");
  eval->add_option("--precision", precision, "binary128 or binary64 closed forms");
  eval->add_option("--format", format)->check(CLI::IsMember(formats));

  // verify
  auto* verify = app.add_subcommand("verify", "Check an identity or transform on random samples");
  std::string identity, reference = "oracle", m_range, n_range;
  int samples = 200;
  std::uint64_t seed = 42;
  double vtol = 1e-8, min_decay = 1.0, margin = 0.05;
  bool real_only = false;
  verify->add_option("--identity", identity, "identity or transform key")->required();
  verify->add_option("--reference", reference, "oracle or an identity key");
  verify->add_option("--samples", samples)->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed);
  verify->add_option("--tol", vtol);
  verify->add_option("--m-range", m_range, "lo:hi");
  verify->add_option("--n-range", n_range, "lo:hi");
  verify->add_option("--min-decay", min_decay, "lower bound on Re(2 - a + m + n)");
  verify->add_option("--margin", margin, "lattice margin");
  verify->add_flag("--real-only", real_only, "sample real parameters only");
  verify->add_option("--precision", precision, "binary128 or binary64 closed forms");
  verify->add_option("--format", format)->check(CLI::IsMember(formats));

  // table
  auto* table = app.add_subcommand("table", "Tabulate over an (m, n) grid");
  std::string tm_range = "0:3", tn_range = "0:3";
  table->add_option("--a", a_s)->required();
  table->add_option("--b", b_s)->required();
  table->add_option("--c", c_s)->required();
  table->add_option("--m-range", tm_range, "lo:hi");
  table->add_option("--n-range", tn_range, "lo:hi");
  table->add_option("--method", method);
  table->add_option("--tol", tol);
  table->add_option("--precision", precision);
  table->add_option("--format", format)->check(CLI::IsMember(formats));

  auto* list = app.add_subcommand("list-identities", "List identity and transform keys");
  list->add_option("--format", format)->check(CLI::IsMember(formats));

  std::vector<const char*> argv;
  argv.push_back("hyp32");
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*eval) {
      const Params3F2NegDiff p{require_complex("--a", a_s), require_complex("--b", b_s),
                               require_complex("--c", c_s), m, n};
      std::optional<Cx> z;
      if (!z_s.empty()) z = require_complex("--z", z_s);
      const Evaluated e =
          evaluate_with(method, p, z, tolerance_from_env(tol), parse_precision(precision));
      print_value(out, format, e);
      return exit_code(e.value.status);
    }
    if (*verify) {
      if (vtol <= 0.0) throw UsageError{"--tol must be positive"};
      const Precision prec = parse_precision(precision);
      if (auto t = transform_from_key(identity)) {
        if (reference != "oracle") {
          throw UsageError{"--reference applies to identities, not transforms"};
        }
        TransformOptions opt;
        if (*t == TransformId::KA) {
          opt.constraints.m_hi = opt.constraints.n_hi = 3;
          opt.z = Cx{0.5, 0.0};
        }
        const VerifyReport r = check_transform(*t, seed, samples, vtol, opt);
        print_report(out, format, r);
        return r.failures.empty() ? kExitOk : kExitFailures;
      }
      auto id = identity_from_key(identity);
      if (!id) throw UsageError{"--identity: unknown key '" + identity + "'"};
      SampleConstraints c;
      if (!m_range.empty()) std::tie(c.m_lo, c.m_hi) = require_range("--m-range", m_range);
      if (!n_range.empty()) std::tie(c.n_lo, c.n_hi) = require_range("--n-range", n_range);
      c.min_decay = min_decay;
      c.lattice_margin = margin;
      c.allow_complex = !real_only;
      CheckOptions opt;
      opt.precision = prec;
      opt.oracle_tol = tolerance_from_env(1e-13);
      if (reference != "oracle") {
        opt.reference = identity_from_key(reference);
        if (!opt.reference) throw UsageError{"--reference: unknown key '" + reference + "'"};
      }
      const VerifyReport r = check_identity(*id, c, seed, samples, vtol, opt);
      print_report(out, format, r);
      return r.failures.empty() ? kExitOk : kExitFailures;
    }
    if (*table) {
      const Cx a = require_complex("--a", a_s), b = require_complex("--b", b_s),
               c = require_complex("--c", c_s);
      const auto [m_lo, m_hi] = require_range("--m-range", tm_range);
      const auto [n_lo, n_hi] = require_range("--n-range", tn_range);
      const Tolerance t = tolerance_from_env(tol);
      const Precision prec = parse_precision(precision);
      Status worst_status = Status::ok;
      ojson cells = ojson::array();
      if (format == "csv") out << "m,n,re,im,abs_err,status,method\n";
      for (int mi = m_lo; mi <= m_hi; ++mi) {
        for (int ni = n_lo; ni <= n_hi; ++ni) {
          const Evaluated e = evaluate_with(method, {a, b, c, mi, ni}, std::nullopt, t, prec);
          worst_status = worst(worst_status, e.value.status);
          const std::string st(to_string(e.value.status));
          if (format == "json") {
            ojson cell;
            cell["m"] = mi;
            cell["n"] = ni;
            cell["re"] = e.value.value.real();
            cell["im"] = e.value.value.imag();
            cell["abs_err"] = abs_err_json(e.value.abs_err);
            cell["status"] = st;
            cell["method"] = e.method;
            cells.push_back(cell);
          } else if (format == "csv") {
            out << mi << ',' << ni << ',' << num(e.value.value.real()) << ','
                << num(e.value.value.imag()) << ',' << num(e.value.abs_err) << ','
                << csv_field(st) << ',' << csv_field(e.method) << '\n';
          } else {
            char line[256];
            std::snprintf(line, sizeof line, "m=%-3d n=%-3d %24.17g %24.17g  %-10.3g %-16s %s\n",
                          mi, ni, e.value.value.real(), e.value.value.imag(), e.value.abs_err,
                          st.c_str(), e.method.c_str());
            out << line;
          }
        }
      }
      if (format == "json") out << cells.dump(2) << '\n';
      return exit_code(worst_status);
    }
    if (*list) {
      if (format == "json") {
        ojson j = ojson::array();
        for (const IdentityInfo& info : identity_registry()) {
          j.push_back({{"key", info.key}, {"kind", "identity"}, {"label", info.label}});
        }
        for (int i = 0; i < 8; ++i) {
          j.push_back({{"key", to_string(static_cast<TransformId>(i))}, {"kind", "transform"}});
        }
        out << j.dump(2) << '\n';
      } else {
        if (format == "csv") out << "key,kind,label\n";
        for (const IdentityInfo& info : identity_registry()) {
          if (format == "csv") {
            out << info.key << ",identity," << csv_field(std::string(info.label)) << '\n';
          } else {
            out << info.key << std::string(10 - info.key.size(), ' ') << info.label << '\n';
          }
        }
        for (int i = 0; i < 8; ++i) {
          const std::string key(to_string(static_cast<TransformId>(i)));
          if (format == "csv") {
            out << key << ",transform,\n";
          } else {
            out << key << std::string(10 - key.size(), ' ') << "transform\n";
          }
        }
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hyp32
