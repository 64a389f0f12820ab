// quatlat: command-line front end.
//
// Exit codes: 0 ok, 2 invalid form, 3 precondition violated,
// 4 resource limit, 5 internal inconsistency.

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "quatlat/density.hpp"
#include "quatlat/discriminant.hpp"
#include "quatlat/eisenstein.hpp"
#include "quatlat/error.hpp"
#include "quatlat/exceptions.hpp"
#include "quatlat/forms.hpp"
#include "quatlat/padic.hpp"

using json = nlohmann::ordered_json;
using namespace quatlat;

namespace {

struct Common {
  std::string form;
  int jobs = 1;
  std::uint64_t seed = 0;  // accepted for interface stability; nothing is randomized
  std::string format = "json";
};

json rat(const Rational& r) { return to_string(r); }

json big(const Integer& z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max())
    return z.convert_to<std::int64_t>();
  return z.str();
}

json count(uint128 v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return to_string(v);
}

std::string kind_name(JordanBlock::Kind k) {
  switch (k) {
    case JordanBlock::Kind::Hyperbolic:
      return "hyperbolic";
    case JordanBlock::Kind::Anisotropic:
      return "anisotropic";
    default:
      return "diagonal";
  }
}

json matrix(const Matrix4<Rational>& m) {
  json out = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(rat(m(i, j)));
    out.push_back(row);
  }
  return out;
}

json int_matrix(const IntMatrix4& m) {
  json out = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

EnumOptions enum_options(const Common& c) {
  EnumOptions opt;
  opt.jobs = std::max(1, c.jobs);
  return opt;
}

std::string fixed(double v) {
  std::ostringstream s;
  s << std::setprecision(15) << v;
  return s.str();
}

int run_analyze(const Common& c) {
  const QuadForm q = parse_form(c.form);
  json out;
  out["form"] = format_form(q);
  out["disc"] = q.disc();
  out["level"] = q.level();
  out["char_disc"] = q.invariants().char_disc;
  out["primitive"] = q.is_primitive();
  const ReducedForm r = reduce(q);
  out["reduced"] = {{"form", format_form(r.form)}, {"transform", int_matrix(r.transform)}};
  json primes = json::array();
  json aniso = json::array();
  for (const auto p : prime_divisors(2 * q.disc())) {
    const JordanSplitting j = jordan_decompose(q, p);
    json blocks = json::array();
    for (const auto& b : j.blocks) {
      json unit = json::array();
      for (int i = 0; i < b.dim; ++i) {
        json row = json::array();
        for (int k = 0; k < b.dim; ++k) row.push_back(rat(b.unit(i, k)));
        unit.push_back(row);
      }
      blocks.push_back({{"scale", b.scale}, {"dim", b.dim}, {"kind", kind_name(b.kind)}, {"unit", unit}});
    }
    const AnisotropyReport rep = anisotropy_depth(q, p);
    json entry;
    entry["p"] = p;
    entry["precision"] = j.precision;
    entry["jordan"] = blocks;
    entry["hasse"] = hasse_invariant(q, p);
    entry["anisotropic"] = rep.anisotropic;
    entry["r_p"] = rep.r_p ? json(*rep.r_p) : json("inf");
    if (rep.witness) {
      json w = json::array();
      for (int i = 0; i < 4; ++i) w.push_back(big((*rep.witness)(i)));
      entry["witness"] = w;
      entry["witness_modulus_exponent"] = rep.witness_modulus_exponent;
      entry["hensel_certified"] = rep.hensel_certified;
    } else {
      entry["witness"] = nullptr;
    }
    primes.push_back(entry);
    if (rep.anisotropic) aniso.push_back(p);
  }
  out["primes"] = primes;
  out["anisotropic_primes"] = aniso;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_density(const Common& c, std::int64_t n, std::int64_t p, const std::string& method, int k) {
  const QuadForm q = parse_form(c.form);
  DensityValue v;
  if (method == "brute") v = density_bruteforce(q, n, p);
  else if (method == "closed") v = q.level() % p != 0 ? density_unramified(q, n, p) : yang_good_density(q, n, p);
  else if (method == "recursive") v = density_recursive(q, n, p);
  else throw PreconditionViolated("unknown method " + method);
  const SolutionTypeCensus cs = census(q, n, p, k);
  const DensityParts parts = density_parts(q, n, p);
  json out;
  out["p"] = p;
  out["n"] = n;
  out["beta"] = rat(v.value);
  out["method"] = to_string(v.method);
  if (v.method == DensityMethod::Brute) out["level"] = v.level;
  out["parts"] = {{"good", rat(parts.good)},
                  {"zero", rat(parts.zero)},
                  {"bad_one", rat(parts.bad_one)},
                  {"bad_two", rat(parts.bad_two)}};
  out["census"] = {{"k", cs.k},         {"total", count(cs.total)},     {"good", count(cs.good)},
                   {"zero", count(cs.zero)}, {"bad_one", count(cs.bad_one)}, {"bad_two", count(cs.bad_two)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_theta(const Common& c, std::int64_t bound) {
  const QuadForm q = parse_form(c.form);
  const auto t = theta_coeffs(q, bound, enum_options(c));
  if (c.format == "csv") {
    for (std::size_t i = 0; i < t.size(); ++i) std::cout << (i ? "," : "") << t[i];
    std::cout << "\n";
    return 0;
  }
  json out;
  out["form"] = format_form(q);
  out["bound"] = bound;
  out["coeffs"] = t;
  std::cout << out.dump() << "\n";
  return 0;
}

int run_eisenstein(const Common& c, std::int64_t bound, std::int64_t single) {
  const QuadForm q = parse_form(c.form);
  const std::int64_t lo = single > 0 ? single : 1, hi = single > 0 ? single : bound;
  if (hi < 1) throw PreconditionViolated("bound must be positive");
  const auto theta = theta_coeffs(q, hi, enum_options(c));
  if (c.format == "csv") std::cout << "n,a_E,a_E_error,r_Q,a_C\n";
  for (std::int64_t n = lo; n <= hi; ++n) {
    const EisensteinCoefficient e = eisenstein_coeff(q, n);
    const double r = static_cast<double>(theta[static_cast<std::size_t>(n)]);
    if (c.format == "csv") {
      std::cout << n << "," << fixed(e.value.value) << "," << fixed(e.value.error) << ","
                << theta[static_cast<std::size_t>(n)] << "," << fixed(r - e.value.value) << "\n";
      continue;
    }
    json local = json::object();
    for (const auto& [p, d] : e.local_factors) local[std::to_string(p)] = rat(d.value);
    json row;
    row["n"] = n;
    row["a_E"] = e.value.value;
    row["a_E_error"] = e.value.error;
    row["r_Q"] = theta[static_cast<std::size_t>(n)];
    row["a_C"] = r - e.value.value;
    row["rational_factor"] = rat(e.rational_factor);
    row["local_factors"] = local;
    std::cout << row.dump() << "\n";
  }
  return 0;
}

int run_cusps(const Common& c) {
  const QuadForm q = parse_form(c.form);
  const std::int64_t n = q.level();
  const auto table = cusp_table(q);
  const Rational sum = cusp_sum(q);
  const DiscGroup g = disc_group(q);
  json h = json::object();
  for (const auto p : prime_divisors(n))
    if (p != 2) h[std::to_string(p)] = rat(h_of_p(g, n, p));
  if (c.format == "csv") {
    std::cout << "c,multiplicity,width,image_size,kernel_size,coset_equal,r_disc\n";
    for (const auto& d : table)
      std::cout << d.c << "," << d.multiplicity << "," << d.width << "," << d.image_size << "," << d.kernel_size << ","
                << (d.coset_equal ? "true" : "false") << "," << to_string(d.r_disc) << "\n";
    std::cout << "# cusp_sum " << to_string(sum) << "\n";
    return 0;
  }
  json rows = json::array();
  for (const auto& d : table)
    rows.push_back({{"c", d.c},
                    {"multiplicity", d.multiplicity},
                    {"width", d.width},
                    {"image_size", big(d.image_size)},
                    {"kernel_size", big(d.kernel_size)},
                    {"coset_equal", d.coset_equal},
                    {"r_disc", rat(d.r_disc)}});
  json factors = json::array();
  for (const auto& f : g.factors) factors.push_back(big(f));
  json out;
  out["form"] = format_form(q);
  out["level"] = n;
  out["index"] = gamma0_index(n);
  out["invariant_factors"] = factors;
  out["cusps"] = rows;
  out["cusp_sum"] = rat(sum);
  out["h"] = h;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_exceptions(const Common& c, std::int64_t bound, int kmax) {
  const QuadForm q = parse_form(c.form);
  for (const auto& r : search_exceptions(q, bound, kmax, enum_options(c))) {
    json row;
    row["n"] = r.n;
    row["locally_represented"] = r.locally_represented;
    row["coprime_to_disc"] = r.coprime_to_disc;
    row["strong"] = r.strong;
    row["primitive"] = r.primitive;
    row["represented"] = r.represented;
    if (r.escalator)
      row["escalator"] = {{"p", r.escalator->p},
                          {"k_max", r.escalator->k_max},
                          {"counts", r.escalator->counts},
                          {"verified", r.escalator->verified}};
    else
      row["escalator"] = nullptr;
    std::cout << row.dump() << "\n";
  }
  return 0;
}

int run_bounds(const Common& c, double eps, double constant, std::int64_t n, double cc) {
  const QuadForm q = parse_form(c.form);
  const ThresholdSet t = thresholds(q, eps, constant);
  json out;
  out["form"] = format_form(q);
  out["disc"] = q.disc();
  out["level"] = q.level();
  out["eps"] = eps;
  out["constant"] = constant;
  out["thresholds"] = t.t;
  const double pb = petersson_bound(q, eps);
  out["petersson_bound"] = pb;
  if (n > 0) {
    const double cc_used = cc >= 0 ? cc : pb;
    out["explicit_bound"] = {{"n", n}, {"cc_bound", cc_used}, {"value", explicit_cusp_coeff_bound(q, n, cc_used)}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_rform(const Common& c, std::int64_t cusp) {
  const QuadForm q = parse_form(c.form);
  const RescaledLattice r = rescaled_lattice(q, cusp);
  json out;
  out["c"] = r.c;
  out["width"] = r.width;
  out["index"] = big(r.index);
  out["basis"] = matrix(r.basis);
  out["gram"] = matrix(r.gram);
  out["integral"] = r.integral;
  out["even"] = r.even;
  out["det"] = rat(r.det);
  out["det_matches_full_scale"] = r.det_matches_full_scale;
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive-definite quaternary quadratic forms"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--form", common.form, "ten coefficients a11,a12,a13,a14,a22,a23,a24,a33,a34,a44")->required();
    sub->add_option("--jobs", common.jobs, "worker threads for enumeration")->check(CLI::PositiveNumber);
    sub->add_option("--seed", common.seed, "reserved; all algorithms are deterministic");
    sub->add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  std::int64_t n = 0, prime = 0, bound = 0, cusp = 1;
  int kmax = -1, k = 3;
  double eps = 0, constant = 1, cc = -1;
  std::string method = "recursive";

  auto* analyze = app.add_subcommand("analyze", "invariants, Jordan data and anisotropy");
  add_common(analyze);

  auto* density = app.add_subcommand("density", "local density beta_p(Q; n)");
  add_common(density);
  density->add_option("--n", n)->required();
  density->add_option("--prime", prime)->required();
  density->add_option("--method", method)->check(CLI::IsMember({"brute", "recursive", "closed"}));
  density->add_option("--k", k, "census modulus exponent");

  auto* theta = app.add_subcommand("theta", "representation numbers r_Q(0..bound)");
  add_common(theta);
  theta->add_option("--bound", bound)->required();

  auto* eis = app.add_subcommand("eisenstein", "a_E(n), r_Q(n), a_C(n)");
  add_common(eis);
  eis->add_option("--bound", bound);
  eis->add_option("--n", n);

  auto* cusps_cmd = app.add_subcommand("cusps", "cusp table and cusp sum");
  add_common(cusps_cmd);

  auto* exc = app.add_subcommand("exceptions", "locally represented integers that are not represented");
  add_common(exc);
  exc->add_option("--bound", bound)->required();
  exc->add_option("--kmax", kmax);

  auto* bnds = app.add_subcommand("bounds", "threshold evaluators");
  add_common(bnds);
  bnds->add_option("--eps", eps);
  bnds->add_option("--const", constant);
  bnds->add_option("--n", n, "also evaluate the explicit cusp coefficient bound at n");
  bnds->add_option("--cc", cc, "bound for <C, C>; defaults to petersson_bound");

  auto* rform = app.add_subcommand("rform", "lattice T and rescaled form R at a cusp");
  add_common(rform);
  rform->add_option("--c", cusp)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*analyze) return run_analyze(common);
    if (*density) return run_density(common, n, prime, method, k);
    if (*theta) return run_theta(common, bound);
    if (*eis) return run_eisenstein(common, bound, n);
    if (*cusps_cmd) return run_cusps(common);
    if (*exc) return run_exceptions(common, bound, kmax);
    if (*bnds) return run_bounds(common, eps, constant, n, cc);
    if (*rform) return run_rform(common, cusp);
  } catch (const InvalidForm& e) {
    std::cerr << "invalid form: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionViolated& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
