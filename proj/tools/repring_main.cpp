#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "repring/banach.hpp"
#include "repring/exprparse.hpp"
#include "repring/families.hpp"
#include "repring/gamma.hpp"
#include "repring/homs.hpp"
#include "repring/ideals.hpp"
#include "repring/ring_io.hpp"
#include "repring/species.hpp"

using namespace repring;
using nlohmann::json;

namespace {

struct RingOpts {
  std::string family;
  std::string ring_file;
  long p = 0;
  int n = 1;
  long m = 0;
  long d = 1;
  bool subgroup = false;
  long cap = 125;
};

void add_ring_opts(CLI::App* cmd, RingOpts& opts) {
  cmd->add_option("--family", opts.family,
                  "family name (see `repring families list`)");
  cmd->add_option("--ring", opts.ring_file, "ring JSON file");
  cmd->add_option("--p", opts.p, "prime parameter");
  cmd->add_option("--n", opts.n, "power / second parameter");
  cmd->add_option("--m", opts.m, "order parameter");
  cmd->add_option("--d", opts.d, "twist parameter");
  cmd->add_flag("--subgroup", opts.subgroup,
                "Frobenius: collapsed index-pm subring");
  cmd->add_option("--cap", opts.cap, "basis cap for cyclic-pn (default 125)");
}

FamilyParams to_params(const RingOpts& o) {
  FamilyParams fp;
  fp.p = o.p;
  fp.n = o.n;
  fp.m = o.m;
  fp.d = o.d;
  fp.subgroup = o.subgroup;
  fp.basis_cap = o.cap;
  fp.path = o.ring_file;
  if (o.family == "cyclic-p")
    fp.family = Family::cyclic_p;
  else if (o.family == "cyclic-pn")
    fp.family = Family::cyclic_pn;
  else if (o.family == "frobenius")
    fp.family = Family::frobenius;
  else if (o.family == "taft")
    fp.family = Family::taft;
  else if (o.family == "sweedler")
    fp.family = Family::sweedler;
  else if (o.family == "toy-i")
    fp.family = Family::toy_i;
  else if (o.family == "toy-ii")
    fp.family = Family::toy_ii;
  else if (o.family == "toy-iii")
    fp.family = Family::toy_iii;
  else if (o.family == "z2-z4")
    fp.family = Family::z2_z4_integral;
  else if (!o.ring_file.empty())
    fp.family = Family::custom;
  else
    throw RingError(Err::BadParams, "unknown family '" + o.family + "'");
  return fp;
}

std::string cache_key(const RingOpts& o) {
  std::ostringstream os;
  os << o.family << "_p" << o.p << "_n" << o.n << "_m" << o.m << "_d" << o.d
     << (o.subgroup ? "_sub" : "") << "_cap" << o.cap;
  return os.str();
}

RingSpec make_ring(const RingOpts& o) {
  if (!o.ring_file.empty()) return load_ring_file(o.ring_file);
  FamilyParams fp = to_params(o);
  const char* cache_dir = std::getenv("REPRING_CACHE_DIR");
  bool cacheable = fp.family == Family::cyclic_p ||
                   fp.family == Family::cyclic_pn ||
                   fp.family == Family::frobenius || fp.family == Family::taft;
  if (cache_dir && cacheable) {
    std::filesystem::path path =
        std::filesystem::path(cache_dir) / (cache_key(o) + ".json");
    if (std::filesystem::exists(path))
      return load_ring_file(path.string(), /*validate=*/false);
    RingSpec ring = build_family(fp);
    std::filesystem::create_directories(cache_dir);
    save_ring_file(ring, path.string());
    return ring;
  }
  return build_family(fp);
}

json gamma_report_json(const GammaReport& rep) {
  json out;
  json cs = json::array();
  for (const Int& c : rep.c) cs.push_back(c.get_str());
  out["c"] = std::move(cs);
  out["upper"] = rep.upper;
  if (rep.lower_heuristic)
    out["lower"] = {{"value", *rep.lower_heuristic}, {"kind", "heuristic"}};
  if (rep.certified)
    out["certified"] = {{"value", rep.certified->value},
                        {"method", to_string(rep.certified->method)},
                        {"descriptor", rep.certified->descriptor}};
  out["method_log"] = rep.method_log;
  return out;
}

std::string tensor_table(const RingSpec& ring) {
  std::ostringstream os;
  const int r = ring.rank();
  for (BasisId i = 0; i < r; ++i) {
    for (BasisId j = 0; j < r; ++j) {
      if (j) os << " | ";
      os << render_compact(ring.product(i, j), ring);
    }
    os << "\n";
  }
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"repring: exact arithmetic for abstract representation rings"};
  app.require_subcommand(1);
  unsigned seed = 0;
  std::string format = "text";
  app.add_option("--seed", seed, "deterministic seed (default 0)");
  app.add_option("--format", format, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  auto* cmd_families =
      app.add_subcommand("families", "list built-in families");
  cmd_families->add_subcommand("list", "list built-in families");

  RingOpts build_opts;
  std::string build_out;
  auto* cmd_build = app.add_subcommand("build", "construct a ring");
  add_ring_opts(cmd_build, build_opts);
  cmd_build->add_option("--out", build_out, "write ring JSON to file");

  RingOpts verify_opts;
  std::string verify_file;
  std::size_t verify_budget = 2000;
  auto* cmd_verify = app.add_subcommand("verify", "check the ring axioms");
  add_ring_opts(cmd_verify, verify_opts);
  cmd_verify->add_option("file", verify_file, "ring JSON file");
  cmd_verify->add_option("--budget", verify_budget, "sample budget");

  RingOpts gamma_opts;
  std::string gamma_element, gamma_ideal = "proj", gamma_method = "auto";
  int gamma_N = 32;
  bool gamma_close = false;
  auto* cmd_gamma =
      app.add_subcommand("gamma", "gamma invariant of an element");
  add_ring_opts(cmd_gamma, gamma_opts);
  cmd_gamma->add_option("--element", gamma_element)->required();
  cmd_gamma->add_option("--ideal", gamma_ideal, "proj | max | {labels}");
  cmd_gamma
      ->add_option("--method", gamma_method, "auto | sequence | pf | species")
      ->check(CLI::IsMember({"auto", "sequence", "pf", "species"}));
  cmd_gamma->add_option("--N", gamma_N, "sequence length");
  cmd_gamma->add_flag("--close", gamma_close, "close the ideal literal");

  RingOpts core_opts;
  std::string core_element, core_ideal = "proj";
  bool core_close = false;
  auto* cmd_core = app.add_subcommand("core", "core of an element");
  add_ring_opts(cmd_core, core_opts);
  cmd_core->add_option("--element", core_element)->required();
  cmd_core->add_option("--ideal", core_ideal);
  cmd_core->add_flag("--close", core_close);

  RingOpts ideal_opts;
  std::string ideal_spec = "max";
  bool ideal_close = false;
  auto* cmd_ideal =
      app.add_subcommand("ideal", "representation ideal members");
  add_ring_opts(cmd_ideal, ideal_opts);
  cmd_ideal->add_option("--ideal", ideal_spec, "proj | max | {labels}");
  cmd_ideal->add_flag("--close", ideal_close, "take the ideal closure");

  RingOpts species_opts;
  auto* cmd_species = app.add_subcommand("species", "enumerate species");
  add_ring_opts(cmd_species, species_opts);

  RingOpts table_opts;
  std::string table_kind = "species";
  auto* cmd_table = app.add_subcommand("table", "render tables");
  add_ring_opts(cmd_table, table_opts);
  cmd_table->add_option("--kind", table_kind, "species | tensor")
      ->check(CLI::IsMember({"species", "tensor"}));

  RingOpts radical_opts;
  auto* cmd_radical = app.add_subcommand("radical", "nil radical basis");
  add_ring_opts(cmd_radical, radical_opts);

  long psi_p = 0, psi_t = 1;
  std::string psi_element;
  auto* cmd_psi = app.add_subcommand("psi", "Adams operation on a(Z/p)");
  cmd_psi->add_option("--p", psi_p)->required();
  cmd_psi->add_option("--n", psi_t, "Adams index")->required();
  cmd_psi->add_option("--element", psi_element)->required();

  long shat_p = 0;
  int shat_n = 1, shat_ell = 0;
  std::string shat_element;
  auto* cmd_shat =
      app.add_subcommand("shat", "s-hat_ell: a(Z/p^{n+1}) -> a(Z/p^n)");
  cmd_shat->add_option("--p", shat_p)->required();
  cmd_shat->add_option("--n", shat_n, "target level")->required();
  cmd_shat->add_option("--ell", shat_ell)->required();
  cmd_shat->add_option("--element", shat_element)->required();

  long chain_p = 0;
  int chain_n = 1;
  std::vector<int> chain_ells;
  auto* cmd_chain = app.add_subcommand(
      "species-chain", "composite chain species of a(Z/p^n)");
  cmd_chain->add_option("--p", chain_p)->required();
  cmd_chain->add_option("--n", chain_n)->required();
  cmd_chain->add_option("--ell", chain_ells, "ell_0,...,ell_{n-1}")
      ->required()
      ->delimiter(',');

  RingOpts norms_opts;
  std::string norms_element, norms_ideal;
  auto* cmd_norms = app.add_subcommand("norms", "norm diagnostics");
  add_ring_opts(cmd_norms, norms_opts);
  cmd_norms->add_option("--element", norms_element)->required();
  cmd_norms->add_option("--ideal", norms_ideal, "quotient norm ideal");

  long sl2_q = 0;
  auto* cmd_sl2 = app.add_subcommand("sl2", "SL(2,q) quotient presentation");
  cmd_sl2->add_option("--q", sl2_q)->required();

  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  SpeciesOptions sp_opts;
  sp_opts.seed = seed;
  std::cout << std::setprecision(10);

  if (cmd_families->parsed()) {
    std::cout
        << "cyclic-p    --p P                  Green ring of Z/p in char p\n"
        << "cyclic-pn   --p P --n N [--cap C]  Green ring of Z/p^n (p^n <= C)\n"
        << "frobenius   --p P --m M --d D      a(Z/p x| Z/2m); --subgroup: Z/p x| Z/m\n"
        << "taft        --m M --n N            a(H_{2m,n}(q)), n >= 2, n | m\n"
        << "sweedler                           Sweedler's 4-dim Hopf algebra\n"
        << "toy-i       --d D                  Z[u,1/u] (+) Z rho, d >= 2\n"
        << "toy-ii      --d D                  Z[u,v]/((uv-1)(u-d),(uv-1)(v-d))\n"
        << "toy-iii                            Z[v]/(v^3-2v^2)\n"
        << "z2-z4                              integral ring of Z2[Z/4]\n"
        << "custom      --ring FILE            ring JSON file\n";
    return 0;
  }

  if (cmd_build->parsed()) {
    RingSpec ring = make_ring(build_opts);
    if (!build_out.empty()) {
      save_ring_file(ring, build_out);
      std::cout << "wrote " << build_out << "\n";
    } else if (format == "json") {
      std::cout << export_ring_json(ring) << "\n";
    } else {
      std::cout << ring.name() << ": rank "
                << (ring.is_finite() ? std::to_string(ring.rank())
                                     : std::string("infinite (rule-based)"))
                << ", closed=" << (ring.closed() ? "true" : "false") << "\n";
    }
    return 0;
  }

  if (cmd_verify->parsed()) {
    if (!verify_file.empty()) verify_opts.ring_file = verify_file;
    RingSpec ring =
        verify_opts.ring_file.empty()
            ? make_ring(verify_opts)
            : load_ring_file(verify_opts.ring_file, /*validate=*/false);
    AxiomReport rep = verify_axioms(ring, verify_budget, seed);
    if (format == "json") {
      json out;
      out["exhaustive"] = rep.exhaustive;
      out["seed"] = rep.seed;
      json checks = json::array();
      for (const auto& c : rep.checks)
        checks.push_back(
            {{"axiom", c.axiom}, {"pass", c.pass}, {"witness", c.witness}});
      out["checks"] = std::move(checks);
      out["all_pass"] = rep.all_pass();
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << (rep.exhaustive ? "exhaustive" : "sampled")
                << " axiom check of " << ring.name() << "\n";
      for (const auto& c : rep.checks) {
        std::cout << (c.pass ? "  [pass] " : "  [FAIL] ") << c.axiom;
        if (!c.pass) std::cout << "  witness: " << c.witness;
        std::cout << "\n";
      }
    }
    return rep.all_pass() ? 0 : 1;
  }

  if (cmd_gamma->parsed()) {
    RingSpec ring = make_ring(gamma_opts);
    Element x = parse_element(gamma_element, ring);
    RepIdeal ideal = parse_ideal(gamma_ideal, ring, gamma_close);
    GammaReport rep;
    if (gamma_method == "pf") {
      auto pf = gamma_pf(x, ring);
      rep.certified = CertifiedGamma{
          pf.gamma, GammaMethod::perron_frobenius,
          "dominant eigenvalue, residual " + std::to_string(pf.residual)};
      rep.upper = pf.gamma;
      rep.method_log.push_back("Perron-Frobenius on the maximal quotient");
    } else if (gamma_method == "species") {
      auto sp = gamma_via_species(x, ideal, ring, sp_opts);
      rep.certified = CertifiedGamma{sp.value, GammaMethod::species,
                                     "max |s(x)| over core-bounded species"};
      rep.upper = sp.value;
      rep.method_log.push_back("species maximisation over the quotient");
    } else if (gamma_method == "sequence") {
      rep = gamma_estimate(x, ideal, ring, gamma_N);
      if (rep.certified && rep.certified->method != GammaMethod::closed_form)
        rep.certified.reset();
    } else {
      rep = gamma_estimate(x, ideal, ring, gamma_N);
    }
    if (format == "json") {
      std::cout << gamma_report_json(rep).dump(2) << "\n";
    } else if (rep.certified) {
      std::cout << std::fixed << std::setprecision(10)
                << rep.certified->value << " method \""
                << to_string(rep.certified->method) << "\"\n";
    } else {
      std::cout << "upper bound " << rep.upper << " (sequence, N = " << gamma_N
                << ")\n";
    }
    return 0;
  }

  if (cmd_core->parsed()) {
    RingSpec ring = make_ring(core_opts);
    Element x = parse_element(core_element, ring);
    RepIdeal ideal = parse_ideal(core_ideal, ring, core_close);
    std::cout << to_string(core(x, ideal), ring) << "\n";
    return 0;
  }

  if (cmd_ideal->parsed()) {
    RingSpec ring = make_ring(ideal_opts);
    RepIdeal ideal = parse_ideal(ideal_spec, ring, ideal_close);
    if (ideal.is_explicit()) {
      std::cout << "{";
      bool first = true;
      for (BasisId i : ideal.members()) {
        std::cout << (first ? "" : ", ") << ring.label_of(i);
        first = false;
      }
      std::cout << "}\n";
    } else {
      std::cout << "predicate ideal: " << ideal.description() << "\n";
    }
    return 0;
  }

  if (cmd_species->parsed()) {
    RingSpec ring = make_ring(species_opts);
    auto sp = enumerate_species(ring, sp_opts);
    RepIdeal proj = x_proj(ring);
    std::optional<RepIdeal> max;
    try {
      max = x_max(ring);
    } catch (const RingError&) {
    }
    for (std::size_t t = 0; t < sp.size(); ++t) {
      std::cout << "s" << t << ":";
      for (BasisId i = 0; i < ring.rank(); ++i) {
        auto v = sp[t].values[i];
        std::cout << " " << v.real();
        if (std::abs(v.imag()) > 1e-9)
          std::cout << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
      }
      std::cout << "  [dim_bounded=" << (sp[t].dimension_bounded ? "y" : "n")
                << " brauer=" << (sp[t].brauer ? "y" : "n");
      if (max)
        std::cout << " core_bounded(max)="
                  << (core_bounded(sp[t], *max, ring) ? "y" : "n");
      std::cout << " core_bounded(proj)="
                << (core_bounded(sp[t], proj, ring) ? "y" : "n") << "]\n";
    }
    return 0;
  }

  if (cmd_table->parsed()) {
    RingSpec ring = make_ring(table_opts);
    if (table_kind == "tensor") {
      std::cout << tensor_table(ring);
    } else {
      TableFormat tf = format == "csv"    ? TableFormat::csv
                       : format == "json" ? TableFormat::json
                                          : TableFormat::text;
      std::cout << species_table(ring, tf, sp_opts) << "\n";
    }
    return 0;
  }

  if (cmd_radical->parsed()) {
    RingSpec ring = make_ring(radical_opts);
    RadicalReport rep = nilradical(ring);
    if (format == "json") {
      json out;
      out["rank"] = rep.rank;
      json basis = json::array();
      for (const auto& b : rep.basis) basis.push_back(to_string(b, ring));
      out["basis"] = std::move(basis);
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "rank " << rep.rank << "\n";
      for (const auto& b : rep.basis)
        std::cout << "  " << to_string(b, ring) << "\n";
    }
    return 0;
  }

  if (cmd_psi->parsed()) {
    RingSpec ring = cyclic_p(psi_p);
    Element x = parse_element(psi_element, ring);
    std::cout << to_string(psi(psi_t, x, ring, psi_p), ring) << "\n";
    return 0;
  }

  if (cmd_shat->parsed()) {
    RingSpec source = cyclic_pn(shat_p, shat_n + 1);
    RingSpec target = cyclic_pn(shat_p, shat_n);
    Element x = parse_element(shat_element, source);
    PolyElement img = s_hat_image(shat_p, shat_n, shat_ell, x, source, target);
    bool first = true;
    for (const auto& [id, poly] : img) {
      std::cout << (first ? "" : " + ") << "(" << poly.to_string("c") << ")*"
                << target.label_of(id);
      first = false;
    }
    if (first) std::cout << "0";
    std::cout << "\n";
    if (shat_ell >= 1) {
      const double pi = 3.14159265358979323846;
      double c = 2 * std::cos(shat_ell * pi / shat_p);
      std::cout << "numeric at c = 2cos(" << shat_ell << "pi/" << shat_p
                << "):";
      for (const auto& [id, v] : poly_element_eval(img, c))
        std::cout << " " << v << "*" << target.label_of(id);
      std::cout << "\n";
    }
    return 0;
  }

  if (cmd_chain->parsed()) {
    RingSpec ring = cyclic_pn(chain_p, chain_n);
    Species s = species_chain(chain_p, chain_n, chain_ells, ring);
    for (BasisId i = 0; i < ring.rank(); ++i)
      std::cout << ring.label_of(i) << " " << s.values[i].real() << "\n";
    return 0;
  }

  if (cmd_norms->parsed()) {
    RingSpec ring = make_ring(norms_opts);
    Element x = parse_element(norms_element, ring);
    json out;
    out["l1"] = norm_l1(x, ring).get_d();
    RepIdeal qideal =
        norms_ideal.empty() ? x_max(ring) : parse_ideal(norms_ideal, ring);
    out["quotient"] = norm_quotient(x, qideal, ring).get_d();
    out["l2"] = norm_l2(core(x, x_max(ring)), ring);
    auto sup = sup_norm_estimate(x, ring);
    out["sup_estimate"] = sup.value;
    out["sup_truncated"] = sup.truncated;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (cmd_sl2->parsed()) {
    QuotientPresentation qp = sl2_quotient(sl2_q);
    if (format == "json") {
      json out;
      out["q"] = qp.q;
      out["p"] = qp.p;
      out["m"] = qp.m;
      out["rank"] = qp.rank;
      out["gamma"] = qp.gamma;
      out["minimal_poly"] = qp.minimal_poly.to_string();
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "q = " << qp.q << ", rank " << qp.rank
                << ", gamma = " << std::setprecision(10) << qp.gamma
                << ", minimal polynomial f_q = " << qp.minimal_poly.to_string()
                << "\n";
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const RingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
