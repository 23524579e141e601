#include "qchain/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace qchain::cli {

namespace {

using json = nlohmann::json;

constexpr std::string_view kBuildHeader = "section,index,value";

BigInt json_integer(const json& v, const std::string& what) {
  if (v.is_number_integer())
    return BigInt(v.get<long long>());
  if (v.is_string()) {
    const ExactRational r = parse_rational(v.get<std::string>());
    if (!is_integer(r))
      throw ParseError(what + " must be an integer");
    return numerator(r);
  }
  throw ParseError(what + " must be an integer");
}

Number json_number(const json& v, const std::string& what) {
  if (v.is_number_integer())
    return Number(ExactRational(v.get<long long>()));
  if (v.is_number_float())
    return Number(v.get<double>());
  if (v.is_string())
    return Number(parse_rational(v.get<std::string>()));
  if (v.is_object() && v.contains("num") && v.contains("den")) {
    const BigInt den = json_integer(v.at("den"), what + ".den");
    if (den == 0)
      throw ParseError(what + " has a zero denominator");
    return Number(ExactRational(json_integer(v.at("num"), what + ".num"), den));
  }
  throw ParseError(what + " must be a number, a string \"a/b\" or {\"num\", \"den\"}");
}

std::vector<double> json_reals(const json& v, const std::string& what) {
  if (!v.is_array())
    throw ParseError(what + " must be an array");
  std::vector<double> out;
  for (const auto& x : v)
    out.push_back(json_number(x, what).value());
  return out;
}

FamilyParams make_params(FamilyKind kind, const std::map<std::string, Number>& given) {
  std::vector<std::string> missing;
  auto get = [&](const std::string& name) {
    auto it = given.find(name);
    if (it == given.end()) {
      missing.push_back(name);
      return Number();
    }
    return it->second;
  };
  FamilyParams params;
  switch (kind) {
  case FamilyKind::QKrawtchouk:
    params = QKrawtchouk{get("p")};
    break;
  case FamilyKind::AffineQKrawtchouk:
    params = AffineQKrawtchouk{get("p")};
    break;
  case FamilyKind::QuantumQKrawtchouk:
    params = QuantumQKrawtchouk{get("p")};
    break;
  case FamilyKind::DualQKrawtchouk:
    params = DualQKrawtchouk{get("c")};
    break;
  case FamilyKind::QHahn:
    params = QHahn{get("alpha"), get("beta")};
    break;
  case FamilyKind::DualQHahn:
    params = DualQHahn{get("gamma"), get("delta")};
    break;
  case FamilyKind::QRacah:
    params = QRacah{get("alpha"), get("beta"), get("gamma")};
    break;
  }
  if (!missing.empty()) {
    std::string msg = "missing parameter(s) for " + std::string(family_tag(kind)) + ":";
    for (const auto& m : missing)
      msg += " " + m;
    throw ParseError(msg);
  }
  return params;
}

std::map<std::string, Number> param_map(const FamilySpec& spec) {
  std::map<std::string, Number> m;
  for (const auto& [name, value] : spec.named_params())
    m[name] = value;
  return m;
}

ChainSpecFile parse_build_csv(std::istream& in) {
  ChainSpecFile spec;
  SpinChain chain;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      continue;
    std::stringstream row(line);
    std::string section, index, value;
    if (!std::getline(row, section, ',') || !std::getline(row, index, ',') ||
        !std::getline(row, value))
      throw ParseError("line " + std::to_string(lineno) + ": expected section,index,value");
    double v = 0.0;
    try {
      v = std::stod(value);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad number '" + value + "'");
    }
    if (section == "J")
      chain.J.push_back(v);
    else if (section == "h")
      chain.h.push_back(v);
    else
      throw ParseError("line " + std::to_string(lineno) + ": unknown section '" + section + "'");
  }
  chain.source = "chain";
  spec.chain = std::move(chain);
  return spec;
}

std::string format_pi(const ExactRational& m) { return to_string(m) + "pi"; }

std::string format_amplitude_row(const std::string& t, const Amplitude& f, bool exact) {
  return t + "," + format_real(f.real()) + "," + format_real(f.imag()) + "," +
         format_real(std::abs(f)) + "," + (exact ? "1" : "0");
}

bool spectrum_is_exact(const SpectralDecomposition& dec) {
  return std::all_of(dec.exact.begin(), dec.exact.end(), [](const auto& e) { return e.has_value(); });
}

const FamilySpec& require_family(const ChainSpecFile& spec, std::string_view command) {
  if (!spec.family)
    throw InvalidArgument(std::string(command) + " needs a family spec, not an explicit chain");
  return *spec.family;
}

double sign_factor(const ChainSpecFile& spec, int r, int s) {
  return spec.sign == OffDiagSign::PositiveOffDiag && (r + s) % 2 ? -1.0 : 1.0;
}

void check_sites(const ChainSpecFile& spec, int r, int s) {
  const int N = spec.N();
  if (r < 0 || r > N || s < 0 || s > N)
    throw InvalidArgument("sites must lie in 0.." + std::to_string(N));
}

} // namespace

int ChainSpecFile::N() const { return family ? family->N : chain->N(); }

SpinChain ChainSpecFile::spin_chain() const {
  return family ? recurrence_coefficients(*family) : *chain;
}

ChainSpecFile parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw ParseError("spec must be a JSON object");
  if (!doc.contains("family") || !doc.at("family").is_string())
    throw ParseError("spec needs a string \"family\"");

  ChainSpecFile spec;
  if (doc.contains("sign")) {
    const json& s = doc.at("sign");
    if (s == "pos")
      spec.sign = OffDiagSign::PositiveOffDiag;
    else if (s == "neg")
      spec.sign = OffDiagSign::NegativeOffDiag;
    else
      throw ParseError("\"sign\" must be \"pos\" or \"neg\"");
  }

  const std::string tag = doc.at("family").get<std::string>();
  if (tag == "chain") {
    SpinChain chain;
    if (!doc.contains("J") || !doc.contains("h"))
      throw ParseError("an explicit chain needs \"J\" and \"h\" arrays");
    chain.J = json_reals(doc.at("J"), "J");
    chain.h = json_reals(doc.at("h"), "h");
    chain.source = "chain";
    spec.chain = std::move(chain);
    return spec;
  }

  const auto kind = family_from_tag(tag);
  if (!kind)
    throw ParseError("unknown family tag '" + tag + "'");
  if (!doc.contains("N") || !doc.at("N").is_number_integer())
    throw ParseError("spec needs an integer \"N\"");
  const long long N = doc.at("N").get<long long>();
  if (N < 0 || N > 1000)
    throw ParseError("\"N\" out of range");
  if (!doc.contains("q"))
    throw ParseError("spec needs \"q\"");
  const Number q = json_number(doc.at("q"), "q");

  std::map<std::string, Number> given;
  if (doc.contains("params")) {
    const json& p = doc.at("params");
    if (!p.is_object())
      throw ParseError("\"params\" must be an object");
    for (const auto& [name, value] : p.items())
      given[name] = json_number(value, "params." + name);
  }
  spec.family = FamilySpec{make_params(*kind, given), static_cast<int>(N), q};
  std::vector<std::string> unknown;
  const auto known = param_map(*spec.family);
  for (const auto& [name, value] : given)
    if (!known.count(name))
      unknown.push_back(name);
  if (!unknown.empty()) {
    std::string msg = "unknown parameter(s) for " + tag + ":";
    for (const auto& u : unknown)
      msg += " " + u;
    throw ParseError(msg);
  }
  return spec;
}

ChainSpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot read spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.rfind(kBuildHeader, 0) == 0) {
    std::stringstream body(text);
    std::string header;
    std::getline(body, header);
    return parse_build_csv(body);
  }
  return parse_spec(text);
}

void validate_spec(const ChainSpecFile& spec) {
  if (spec.family) {
    require_valid(*spec.family);
    return;
  }
  try {
    check_chain(*spec.chain);
  } catch (const InvalidArgument& e) {
    throw ValidationError(e.what());
  }
}

TimePoint parse_time(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  const auto at = s.find("pi");
  if (at == std::string::npos) {
    try {
      std::size_t used = 0;
      const double t = std::stod(s, &used);
      if (used != s.size())
        throw ParseError("bad time '" + std::string(text) + "'");
      return t;
    } catch (const std::logic_error&) {
      throw ParseError("bad time '" + std::string(text) + "'");
    }
  }
  // coeff "pi" [ "/" den ]
  std::string coeff = s.substr(0, at);
  std::string tail = s.substr(at + 2);
  ExactRational m(1);
  if (coeff == "-")
    m = -1;
  else if (!coeff.empty() && coeff != "+") {
    if (coeff.back() == '*')
      coeff.pop_back();
    m = parse_rational(coeff);
  }
  if (!tail.empty()) {
    if (tail[0] != '/')
      throw ParseError("bad time '" + std::string(text) + "'");
    const ExactRational d = parse_rational(tail.substr(1));
    if (d == 0)
      throw ParseError("bad time '" + std::string(text) + "': division by zero");
    m /= d;
  }
  return ExactPhaseTime{m};
}

std::string format_real(double x) {
  if (x == 0.0)
    x = 0.0; // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SpectralDecomposition decompose(const ChainSpecFile& spec) {
  SpectralDecomposition dec = spec.family
                                  ? analytic_decomposition(*spec.family)
                                  : numeric_decomposition(assemble_matrix(*spec.chain, spec.sign));
  if (spec.family && spec.sign == OffDiagSign::PositiveOffDiag)
    for (int n = 1; n < dec.size(); n += 2)
      for (int j = 0; j < dec.size(); ++j)
        dec.U(n, j) = -dec.U(n, j);
  return dec;
}

void cmd_build(const ChainSpecFile& spec, std::ostream& out) {
  validate_spec(spec);
  const SpinChain chain = spec.spin_chain();
  out << kBuildHeader << '\n';
  for (std::size_t i = 0; i < chain.J.size(); ++i)
    out << "J," << i << ',' << format_real(chain.J[i]) << '\n';
  for (std::size_t i = 0; i < chain.h.size(); ++i)
    out << "h," << i << ',' << format_real(chain.h[i]) << '\n';
}

void cmd_spectrum(const ChainSpecFile& spec, std::ostream& out) {
  validate_spec(spec);
  const SpectralDecomposition dec = decompose(spec);
  const int n = dec.size();
  out << "k,eigenvalue,exact\n";
  for (int k = 0; k < n; ++k)
    out << k << ',' << format_real(dec.eigenvalues[k]) << ','
        << (dec.exact[k] ? to_string(*dec.exact[k]) : std::string()) << '\n';
  out << "\nsite";
  for (int k = 0; k < n; ++k)
    out << ",U_" << k;
  out << '\n';
  for (int i = 0; i < n; ++i) {
    out << i;
    for (int k = 0; k < n; ++k)
      out << ',' << format_real(dec.U(i, k));
    out << '\n';
  }
  const DecompositionResiduals res =
      verify_decomposition(dec, assemble_matrix(spec.spin_chain(), spec.sign));
  out << "\nresidual,value\n"
      << "orthogonality," << format_real(res.orthogonality) << '\n'
      << "reconstruction," << format_real(res.reconstruction) << '\n'
      << "eigenvalue_gap," << format_real(res.eigenvalue_gap) << '\n';
}

void cmd_evolve(const ChainSpecFile& spec, int r, int s, const std::vector<TimePoint>& times,
                std::ostream& out, std::ostream& err) {
  validate_spec(spec);
  check_sites(spec, r, s);
  if (times.empty())
    throw InvalidArgument("empty time grid");
  const SpectralDecomposition dec = decompose(spec);
  const bool exact = spectrum_is_exact(dec);
  bool warned_decimal = false, warned_inexact = false;
  std::vector<std::string> rows;
  for (const TimePoint& t : times) {
    if (const auto* e = std::get_if<ExactPhaseTime>(&t)) {
      if (exact) {
        rows.push_back(format_amplitude_row(format_pi(e->pi_multiple),
                                            correlation_exact_phase(dec, r, s, *e), true));
        continue;
      }
      if (!warned_inexact) {
        err << "warning: spectrum is not exact; pi multiples use floating phases\n";
        warned_inexact = true;
      }
      rows.push_back(format_amplitude_row(format_pi(e->pi_multiple),
                                          correlation(dec, r, s, e->seconds()), false));
      continue;
    }
    if (!warned_decimal) {
      err << "warning: decimal times are seconds and use floating phases\n";
      warned_decimal = true;
    }
    const double sec = std::get<double>(t);
    rows.push_back(format_amplitude_row(format_real(sec), correlation(dec, r, s, sec), false));
  }
  // Only write once every row succeeded, so a time-bound failure leaves no partial table.
  out << "t,re,im,abs,exact_phase\n";
  for (const auto& row : rows)
    out << row << '\n';
}

int cmd_pst_check(const ChainSpecFile& spec, std::ostream& out) {
  const FamilySpec& fam = require_family(spec, "pst-check");
  require_valid(fam);
  const auto q = fam.rational_q();
  if (!q || !fam.all_exact())
    throw InvalidArgument("pst-check needs exact rational q and parameters");
  const Classification cls = classify_q(*q);
  out << "family," << family_tag(fam.kind()) << '\n'
      << "N," << fam.N << '\n'
      << "q," << fam.q.to_string() << '\n'
      << "classification," << to_string(cls.parity) << '\n'
      << "explanation," << cls.explanation << '\n';
  if (cls.parity != ParityClass::OddOdd) {
    out.flush();
    throw NotOddOdd(cls.explanation);
  }
  const TransferReport rep = transfer_report(fam);
  for (const auto& [t, ok] : rep.candidates)
    out << "candidate," << format_pi(t.pi_multiple) << ',' << (ok ? "pass" : "fail") << '\n';
  out << "T," << format_pi(rep.T.pi_multiple) << '\n';
  out << "\nk,T_eps_over_pi,integer,parity_ok\n";
  for (const auto& row : rep.parity.rows)
    out << row.k << ',' << to_string(row.value) << ',' << row.integer << ','
        << row.parity_matches << '\n';
  out << "\nr,re_f_r0,im_f_r0,abs_f_r0\n";
  for (std::size_t r = 0; r < rep.amplitudes.size(); ++r) {
    const Amplitude f = rep.amplitudes[r] * sign_factor(spec, static_cast<int>(r), 0);
    out << r << ',' << format_real(f.real()) << ',' << format_real(f.imag()) << ','
        << format_real(std::abs(f)) << '\n';
  }
  out << "\nendpoint_abs," << format_real(rep.endpoint) << '\n'
      << "period_residual," << format_real(rep.period_residual) << '\n';
  if (rep.mirror_residual)
    out << "mirror_residual," << format_real(*rep.mirror_residual) << '\n';
  const bool perfect = rep.verdict == Verdict::Perfect;
  out << "verdict," << (perfect ? "Perfect" : "Imperfect") << '\n';
  return perfect ? kOk : kImperfect;
}

void cmd_closed_form(const ChainSpecFile& spec, int r, int s, std::ostream& out) {
  const FamilySpec& fam = require_family(spec, "closed-form");
  check_sites(spec, r, s);
  const ClosedFormResult res = f_T(fam, r, s);
  out << "field,value\n"
      << "value," << format_real(sign_factor(spec, r, s) * res.value) << '\n'
      << "method," << to_string(res.method) << '\n'
      << "formula," << res.formula << '\n'
      << "residual_vs_direct," << format_real(res.residual_vs_direct) << '\n';
}

void cmd_scan(const ChainSpecFile& spec, const std::string& parameter,
              const std::vector<Number>& grid, std::ostream& out) {
  const FamilySpec& fam = require_family(spec, "scan");
  if (grid.empty())
    throw InvalidArgument("empty scan grid");
  auto params = param_map(fam);
  if (!params.count(parameter))
    throw InvalidArgument("family " + std::string(family_tag(fam.kind())) +
                          " has no parameter '" + parameter + "'");
  std::vector<double> values;
  for (const Number& v : grid) {
    params[parameter] = v;
    const FamilySpec point{make_params(fam.kind(), params), fam.N, fam.q};
    require_valid(point);
    values.push_back(std::fabs(endpoint_formula(point)));
  }
  const auto best = std::max_element(values.begin(), values.end()) - values.begin();
  out << parameter << ",abs_f_N0,is_max\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out << grid[i].to_string() << ',' << format_real(values[i]) << ','
        << (static_cast<std::ptrdiff_t>(i) == best ? 1 : 0) << '\n';
}

std::vector<TimePoint> time_grid(const TimePoint& start, const TimePoint& stop, int count) {
  if (count < 1)
    throw InvalidArgument("grid count must be positive");
  std::vector<TimePoint> out;
  const auto* a = std::get_if<ExactPhaseTime>(&start);
  const auto* b = std::get_if<ExactPhaseTime>(&stop);
  if (a && b) {
    const ExactRational step =
        count > 1 ? ExactRational((b->pi_multiple - a->pi_multiple) / (count - 1)) : ExactRational(0);
    for (int i = 0; i < count; ++i)
      out.push_back(ExactPhaseTime{a->pi_multiple + step * i});
    return out;
  }
  auto seconds = [](const TimePoint& t) {
    if (const auto* e = std::get_if<ExactPhaseTime>(&t))
      return e->seconds();
    return std::get<double>(t);
  };
  const double t0 = seconds(start), t1 = seconds(stop);
  for (int i = 0; i < count; ++i)
    out.push_back(count > 1 ? t0 + (t1 - t0) * i / (count - 1) : t0);
  return out;
}

std::vector<Number> value_grid(const Number& start, const Number& stop, int count, bool log) {
  if (count < 1)
    throw InvalidArgument("grid count must be positive");
  std::vector<Number> out;
  if (log) {
    if (!(start.value() > 0 && stop.value() > 0))
      throw InvalidArgument("a logarithmic grid needs positive end points");
    const double l0 = std::log(start.value()), l1 = std::log(stop.value());
    for (int i = 0; i < count; ++i) {
      if (i == 0)
        out.push_back(start);
      else if (i == count - 1)
        out.push_back(stop);
      else
        out.push_back(Number(std::exp(l0 + (l1 - l0) * i / (count - 1))));
    }
    return out;
  }
  if (start.is_exact() && stop.is_exact()) {
    const ExactRational step =
        count > 1 ? ExactRational((stop.exact() - start.exact()) / (count - 1)) : ExactRational(0);
    for (int i = 0; i < count; ++i)
      out.push_back(Number(ExactRational(start.exact() + step * i)));
    return out;
  }
  for (int i = 0; i < count; ++i)
    out.push_back(Number(count > 1 ? start.value() + (stop.value() - start.value()) * i / (count - 1)
                                   : start.value()));
  return out;
}

namespace {

struct Output {
  std::ofstream file;
  std::ostream* stream;

  Output(const std::string& path, std::ostream& fallback) : stream(&fallback) {
    if (!path.empty()) {
      file.open(path);
      if (!file)
        throw ParseError("cannot write '" + path + "'");
      stream = &file;
    }
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-deformed spin chains: build, spectra, evolution, transfer certification"};
  app.require_subcommand(1);
  std::string spec_path, output_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("spec", spec_path, "JSON spec file, or the CSV written by build")->required();
    sub->add_option("-o,--output", output_path, "write the result here instead of stdout");
  };

  auto* build = app.add_subcommand("build", "couplings J and fields h");
  add_common(build);
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, eigenvectors and residuals");
  add_common(spectrum);

  int r = 0, s = 0, count = 1;
  std::string times, start, stop;
  auto* evolve = app.add_subcommand("evolve", "f_{r,s}(t) over a time grid");
  add_common(evolve);
  evolve->add_option("-r", r, "target site")->required();
  evolve->add_option("-s", s, "source site")->required();
  evolve->add_option("-t,--times", times, "comma-separated times, e.g. 9pi,3/2pi,0.5");
  evolve->add_option("--start", start, "first grid time");
  evolve->add_option("--stop", stop, "last grid time");
  evolve->add_option("--count", count, "number of grid times");

  auto* pst = app.add_subcommand("pst-check", "certify or refute perfect transfer");
  add_common(pst);

  auto* closed = app.add_subcommand("closed-form", "closed-form f_{r,s}(T)");
  add_common(closed);
  closed->add_option("-r", r, "target site")->required();
  closed->add_option("-s", s, "source site")->required();

  std::string parameter, values;
  bool log = false;
  auto* scan = app.add_subcommand("scan", "|f_{N,0}(T)| over a parameter grid");
  add_common(scan);
  scan->add_option("-p,--param", parameter, "parameter to vary")->required();
  scan->add_option("--values", values, "comma-separated values");
  scan->add_option("--start", start, "first grid value");
  scan->add_option("--stop", stop, "last grid value");
  scan->add_option("--count", count, "number of grid values");
  scan->add_flag("--log", log, "logarithmic spacing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  try {
    const ChainSpecFile spec = load_spec(spec_path);
    Output o(output_path, out);
    std::ostream& dst = *o.stream;
    if (*build) {
      cmd_build(spec, dst);
    } else if (*spectrum) {
      cmd_spectrum(spec, dst);
    } else if (*evolve) {
      std::vector<TimePoint> grid;
      for (const auto& t : split_list(times))
        grid.push_back(parse_time(t));
      if (!start.empty() || !stop.empty()) {
        if (start.empty() || stop.empty())
          throw ParseError("--start and --stop go together");
        const auto g = time_grid(parse_time(start), parse_time(stop), count);
        grid.insert(grid.end(), g.begin(), g.end());
      }
      if (grid.empty())
        throw ParseError("give --times or --start/--stop/--count");
      cmd_evolve(spec, r, s, grid, dst, err);
    } else if (*pst) {
      return cmd_pst_check(spec, dst);
    } else if (*closed) {
      cmd_closed_form(spec, r, s, dst);
    } else if (*scan) {
      std::vector<Number> grid;
      for (const auto& v : split_list(values))
        grid.push_back(Number(parse_rational(v)));
      if (!start.empty() || !stop.empty()) {
        if (start.empty() || stop.empty())
          throw ParseError("--start and --stop go together");
        const auto g =
            value_grid(Number(parse_rational(start)), Number(parse_rational(stop)), count, log);
        grid.insert(grid.end(), g.begin(), g.end());
      }
      if (grid.empty())
        throw ParseError("empty scan grid");
      std::stable_sort(grid.begin(), grid.end(),
                       [](const Number& a, const Number& b) { return a.value() < b.value(); });
      cmd_scan(spec, parameter, grid, dst);
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kParse;
  } catch (const ValidationError& e) {
    err << "validation failed: " << e.what() << '\n';
    return kValidation;
  } catch (const NegativeRadicand& e) {
    err << "validation failed: " << e.what() << '\n';
    return kValidation;
  } catch (const TimeBoundExceeded& e) {
    err << "time bound: " << e.what() << '\n';
    return kTimeBound;
  } catch (const NotOddOdd& e) {
    err << "no transfer time: " << e.what() << '\n';
    return kNotOddOdd;
  } catch (const PhaseConditionUnmet& e) {
    err << "phase condition: " << e.what() << '\n';
    return kPhaseCondition;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

} // namespace qchain::cli
