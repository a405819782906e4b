#include "cwq/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "cwq/acceptance.hpp"
#include "cwq/coherent.hpp"
#include "cwq/dicke.hpp"
#include "cwq/kernels.hpp"
#include "cwq/limits.hpp"
#include "cwq/poisson.hpp"
#include "cwq/statespace.hpp"
#include "cwq/tensor.hpp"

namespace cwq {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("N-list", "not an integer: '" + item + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError("N-list", "empty list");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw CLI::ValidationError("N-list", "values must be strictly increasing");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("x", "not a number: '" + item + "'");
    }
  }
  return out;
}

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

/// Per-invocation record of parameters and files.
class Run {
 public:
  Run(std::string subcommand, fs::path out_dir)
      : subcommand_(std::move(subcommand)), out_dir_(std::move(out_dir)), t0_(std::chrono::steady_clock::now()) {}

  json& params() { return params_; }

  fs::path path_for(const std::string& requested, const std::string& fallback) {
    fs::path p = requested.empty() ? out_dir_ / fallback : fs::path(requested);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    artifacts_.push_back(p.string());
    return p;
  }

  void write_text(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error(ErrorKind::DimensionMismatch, "cannot write " + p.string());
    f << text;
  }

  void finish() {
    fs::create_directories(out_dir_);
    json m;
    m["schema_version"] = kSchemaVersion;
    m["subcommand"] = subcommand_;
    m["parameters"] = params_;
    m["artifacts"] = artifacts_;
    m["tool_version"] = CWQ_VERSION;
    m["seed"] = nullptr;
    m["threads"] = kernels::max_threads();
    m["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    std::ofstream f(out_dir_ / (subcommand_ + ".manifest.json"));
    f << m.dump(2) << "\n";
  }

 private:
  std::string subcommand_;
  fs::path out_dir_;
  std::chrono::steady_clock::time_point t0_;
  json params_ = json::object();
  std::vector<std::string> artifacts_;
};

struct Common {
  int threads = 0;
  std::string out_dir = "out";
};

SuBasis basis_for(int k, const std::string& convention) {
  return build_su_basis(k, parse_convention(convention));
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Strict deformation quantization and the quantum Curie-Weiss classical limit"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "OpenMP workers (default: CWQ_THREADS or runtime)");
  app.add_option("--out-dir", common.out_dir, "Directory for data files and manifests")->capture_default_str();
  app.set_version_flag("--version", CWQ_VERSION);

  std::function<int()> action;

  // su-basis
  int sb_k = 2;
  std::string sb_conv = "orthonormal", sb_out, sb_format = "json";
  auto* su = app.add_subcommand("su-basis", "Generators of i su(k) and structure constants");
  su->add_option("--k", sb_k, "Matrix dimension")->required();
  su->add_option("--convention", sb_conv)->check(CLI::IsMember({"orthonormal", "pauli"}))->capture_default_str();
  su->add_option("--out", sb_out, "Output JSON file");
  su->add_option("--format", sb_format)->check(CLI::IsMember({"json"}))->capture_default_str();
  su->callback([&] {
    action = [&] {
      Run run("su-basis", common.out_dir);
      run.params() = {{"k", sb_k}, {"convention", sb_conv}};
      const auto basis = basis_for(sb_k, sb_conv);
      json j;
      j["k"] = sb_k;
      j["convention"] = sb_conv;
      j["generators"] = json::array();
      for (const auto& g : basis.generators) {
        json m = json::array();
        for (int r = 0; r < sb_k; ++r)
          for (int c = 0; c < sb_k; ++c) m.push_back(complex_json(g(r, c)));
        j["generators"].push_back(m);
      }
      j["structure_constants"] = json::array();
      const int n = basis.dimension();
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          for (int l = 0; l < n; ++l)
            if (basis.structure(r, s, l) != 0.0)
              j["structure_constants"].push_back(json::array({r + 1, s + 1, l + 1, basis.structure(r, s, l)}));
      const auto p = run.path_for(sb_out, fmt::format("su_basis_k{}_{}.json", sb_k, sb_conv));
      run.write_text(p, j.dump(2) + "\n");
      run.finish();
      std::cout << p.string() << "\n";
      return 0;
    };
  });

  // membership
  int mb_k = 2;
  std::string mb_x, mb_conv = "orthonormal";
  auto* mem = app.add_subcommand("membership", "Test x against Q_k");
  mem->add_option("--k", mb_k)->required();
  mem->add_option("--x", mb_x, "Comma-separated coordinates")->required();
  mem->add_option("--convention", mb_conv)->check(CLI::IsMember({"orthonormal", "pauli"}))->capture_default_str();
  mem->callback([&] {
    action = [&] {
      const auto basis = basis_for(mb_k, mb_conv);
      const auto xs = parse_double_list(mb_x);
      const StateCoordinates coords(mb_k, Eigen::Map<const Eigen::VectorXd>(xs.data(), xs.size()));
      const auto m = membership(coords, basis);
      json j{{"k", mb_k}, {"convention", mb_conv}, {"member", m.member}, {"margin", m.margin}};
      std::cout << j.dump() << "\n";
      return 0;
    };
  });

  // bracket
  int br_k = 2, br_sign = kDefaultBracketSign;
  std::string br_conv = "pauli", br_f, br_g;
  auto* br = app.add_subcommand("bracket", "Lie-Poisson bracket of two polynomials");
  br->add_option("--k", br_k)->capture_default_str();
  br->add_option("--convention", br_conv)->check(CLI::IsMember({"orthonormal", "pauli"}))->capture_default_str();
  br->add_option("--f", br_f)->required();
  br->add_option("--g", br_g)->required();
  br->add_option("--sign", br_sign)->check(CLI::IsMember({-1, 1}))->capture_default_str();
  br->callback([&] {
    action = [&] {
      const auto basis = basis_for(br_k, br_conv);
      const auto b = poisson_bracket(parse_polynomial(br_k, br_f), parse_polynomial(br_k, br_g), basis, br_sign);
      std::cout << format_polynomial(b) << "\n";
      return 0;
    };
  });

  // quantize
  int qz_k = 2, qz_N = 2;
  std::string qz_conv = "pauli", qz_f, qz_emit;
  auto* qz = app.add_subcommand("quantize", "Q_{1/N}(f) on the full tensor space");
  qz->add_option("--k", qz_k)->capture_default_str();
  qz->add_option("--N", qz_N)->required()->check(CLI::PositiveNumber);
  qz->add_option("--convention", qz_conv)->check(CLI::IsMember({"orthonormal", "pauli"}))->capture_default_str();
  qz->add_option("--f", qz_f)->required();
  qz->add_option("--emit-matrix", qz_emit, "Binary output (f64 re/im, row-major) with a .json sidecar");
  qz->callback([&] {
    action = [&] {
      Run run("quantize", common.out_dir);
      run.params() = {{"k", qz_k}, {"N", qz_N}, {"convention", qz_conv}, {"f", qz_f}};
      const auto basis = basis_for(qz_k, qz_conv);
      const auto q = quantize(parse_polynomial(qz_k, qz_f), qz_N, basis);
      const double norm = operator_norm(q);
      if (!qz_emit.empty()) {
        if (q.dim() > 4096) throw Error(ErrorKind::SizeLimit, "dense emission is limited to dimension 4096");
        const auto p = run.path_for(qz_emit, "quantized.bin");
        std::ofstream f(p, std::ios::binary);
        const Eigen::MatrixXcd d = q.dense();
        for (long r = 0; r < q.dim(); ++r)
          for (long c = 0; c < q.dim(); ++c) {
            const double re = d(r, c).real(), im = d(r, c).imag();
            f.write(reinterpret_cast<const char*>(&re), sizeof re);
            f.write(reinterpret_cast<const char*>(&im), sizeof im);
          }
        json side{{"schema_version", kSchemaVersion}, {"k", qz_k}, {"N", qz_N}, {"dim", q.dim()},
                  {"dtype", "float64"}, {"endianness", "little"}, {"layout", "row-major, re/im interleaved"},
                  {"f", qz_f}, {"convention", qz_conv}};
        const auto sp = run.path_for(p.string() + ".json", "");
        run.write_text(sp, side.dump(2) + "\n");
      }
      run.finish();
      std::cout << json{{"dim", q.dim()}, {"nonzeros", q.matrix.nonZeros()}, {"norm", norm}}.dump() << "\n";
      return 0;
    };
  });

  // dgr-sweep
  std::string dg_f, dg_g, dg_list = "4,5,6,7,8,9,10,11,12", dg_conv = "pauli";
  int dg_k = 2, dg_sign = kDefaultBracketSign;
  auto* dg = app.add_subcommand("dgr-sweep", "DGR defect over N");
  dg->add_option("--f", dg_f)->required();
  dg->add_option("--g", dg_g)->required();
  dg->add_option("--N-list", dg_list)->capture_default_str();
  dg->add_option("--k", dg_k)->capture_default_str();
  dg->add_option("--convention", dg_conv)->check(CLI::IsMember({"orthonormal", "pauli"}))->capture_default_str();
  dg->add_option("--sign", dg_sign)->check(CLI::IsMember({-1, 1}))->capture_default_str();
  dg->callback([&] {
    action = [&] {
      Run run("dgr-sweep", common.out_dir);
      const auto ns = parse_int_list(dg_list);
      run.params() = {{"f", dg_f}, {"g", dg_g}, {"N_list", ns}, {"k", dg_k}, {"convention", dg_conv}, {"bracket_sign", dg_sign}};
      const auto basis = basis_for(dg_k, dg_conv);
      const auto s = dgr_sweep(parse_polynomial(dg_k, dg_f), parse_polynomial(dg_k, dg_g), ns, basis, dg_sign);
      std::string csv = "N,value\n";
      for (const auto& [N, v] : s.points) csv += fmt::format("{},{}\n", N, num(v));
      run.write_text(run.path_for("", "dgr_sweep.csv"), csv);
      if (s.fit) run.params()["loglog_slope"] = s.fit->slope;
      run.finish();
      std::cout << csv;
      return 0;
    };
  });

  // cw-ground
  int cg_N = 10;
  double cg_J = 1.0, cg_B = 0.5;
  std::string cg_out;
  bool cg_csv = false;
  auto* cg = app.add_subcommand("cw-ground", "Curie-Weiss ground state in the Dicke basis");
  cg->add_option("--N", cg_N)->required()->check(CLI::PositiveNumber);
  cg->add_option("--J", cg_J)->capture_default_str();
  cg->add_option("--B", cg_B)->capture_default_str();
  cg->add_option("--out", cg_out);
  cg->add_flag("--csv", cg_csv, "Emit k,c(k) as CSV instead of JSON");
  cg->callback([&] {
    action = [&] {
      Run run("cw-ground", common.out_dir);
      run.params() = {{"N", cg_N}, {"J", cg_J}, {"B", cg_B}};
      const auto gs = ground_state(cg_N, cg_J, cg_B);
      std::string text;
      if (cg_csv) {
        text = "k,c\n";
        for (int k = 0; k <= cg_N; ++k) text += fmt::format("{},{}\n", k, num(gs.state.c[k].real()));
      } else {
        json j{{"N", cg_N}, {"J", cg_J}, {"B", cg_B}, {"energy", gs.energy}, {"gap", gs.gap},
               {"purified", gs.purified}, {"r_ratio", gs.r_ratio}};
        j["c"] = json::array();
        for (int k = 0; k <= cg_N; ++k) j["c"].push_back(gs.state.c[k].real());
        text = j.dump(2) + "\n";
      }
      run.write_text(run.path_for(cg_out, cg_csv ? "cw_ground.csv" : "cw_ground.json"), text);
      run.finish();
      std::cout << fmt::format("energy {} gap {} purified {}\n", num(gs.energy), num(gs.gap), gs.purified);
      return 0;
    };
  });

  // husimi
  int hu_N = 50;
  double hu_ell = 1.0, hu_J = 1.0, hu_B = 0.5;
  std::string hu_grid = "91,180", hu_out;
  auto* hu = app.add_subcommand("husimi", "Husimi-type density of the CW ground state");
  hu->add_option("--N", hu_N)->required()->check(CLI::PositiveNumber);
  hu->add_option("--ell", hu_ell)->check(CLI::IsMember({0.5, 1.0}))->capture_default_str();
  hu->add_option("--grid", hu_grid, "theta points, phi points")->capture_default_str();
  hu->add_option("--J", hu_J)->capture_default_str();
  hu->add_option("--B", hu_B)->capture_default_str();
  hu->add_option("--out", hu_out);
  hu->callback([&] {
    action = [&] {
      Run run("husimi", common.out_dir);
      const auto g = parse_int_list(hu_grid);
      if (g.size() != 2) throw CLI::ValidationError("--grid", "expected T,P");
      run.params() = {{"N", hu_N}, {"ell", hu_ell}, {"J", hu_J}, {"B", hu_B}, {"grid", g}};
      const auto prof = husimi_profile(ground_state(hu_N, hu_J, hu_B).state, hu_ell, g[0], g[1]);
      std::string csv = "theta,phi,value\n";
      for (std::size_t it = 0; it < prof.thetas.size(); ++it)
        for (std::size_t ip = 0; ip < prof.phis.size(); ++ip)
          csv += fmt::format("{},{},{}\n", num(prof.thetas[it]), num(prof.phis[ip]), num(prof.at(it, ip)));
      run.write_text(run.path_for(hu_out, fmt::format("husimi_N{}.csv", hu_N)), csv);
      run.finish();
      return 0;
    };
  });

  // tables
  int tb_which = 1;
  std::string tb_list = "10,20,30,60,90,120,150,180", tb_rule = "tabulation";
  double tb_J = 1.0, tb_B = 0.5;
  auto* tb = app.add_subcommand("tables", "Integral diagnostics of the ground-state Husimi density");
  tb->add_option("--which", tb_which)->required()->check(CLI::IsMember({1, 2, 3}));
  tb->add_option("--N-list", tb_list)->capture_default_str();
  tb->add_option("--quadrature", tb_rule)->check(CLI::IsMember({"tabulation", "exact"}))->capture_default_str();
  tb->add_option("--J", tb_J)->capture_default_str();
  tb->add_option("--B", tb_B)->capture_default_str();
  tb->callback([&] {
    action = [&] {
      Run run("tables", common.out_dir);
      const auto ns = parse_int_list(tb_list);
      const TableRule rule = tb_rule == "exact" ? TableRule::Exact : TableRule::Tabulation;
      run.params() = {{"which", tb_which}, {"N_list", ns}, {"J", tb_J}, {"B", tb_B}, {"quadrature", tb_rule},
                      {"peaks", "arccos(+-z*), phi = 0"}};
      json sizes = json::array();
      std::string csv = tb_which == 1 ? "N,value,flag\n"
                        : tb_which == 2 ? "N,ell_1,ell_half,flag\n"
                                        : "N,A_half,B_half,A_one,B_one,flag\n";
      for (int N : ns) {
        const auto gs = ground_state(N, tb_J, tb_B);
        const auto q = table_quadrature(N, rule);
        sizes.push_back({{"N", N}, {"n_theta", q.thetas.size()}, {"n_phi", q.phis.size()}});
        if (tb_which == 1) {
          const auto t = table1_integral(gs, rule);
          csv += fmt::format("{},{},{}\n", N, num(t.value), t.under_resolved ? "under-resolved" : "");
        } else if (tb_which == 2) {
          const auto a = table2_integral(gs, 1.0, rule), b = table2_integral(gs, 0.5, rule);
          csv += fmt::format("{},{},{},{}\n", N, num(a.value), num(b.value),
                             a.under_resolved || b.under_resolved ? "under-resolved" : "");
        } else {
          const auto h = table3_integrals(gs, 0.5, rule), o = table3_integrals(gs, 1.0, rule);
          csv += fmt::format("{},{},{},{},{},{}\n", N, num(h.a), num(h.b), num(o.a), num(o.b),
                             h.under_resolved || o.under_resolved ? "under-resolved" : "");
        }
      }
      run.params()["quadrature_sizes"] = sizes;
      run.params()["convention"] = "pauli";
      run.write_text(run.path_for("", fmt::format("table{}.csv", tb_which)), csv);
      run.finish();
      std::cout << csv;
      return 0;
    };
  });

  // classical-limit
  std::string cl_f, cl_list = "100,200,400,800";
  double cl_J = 1.0, cl_B = 0.5;
  auto* cl = app.add_subcommand("classical-limit", "<Psi_N, Q(f) Psi_N> against (f(x+)+f(x-))/2");
  cl->add_option("--f", cl_f)->required();
  cl->add_option("--N-list", cl_list)->capture_default_str();
  cl->add_option("--J", cl_J)->capture_default_str();
  cl->add_option("--B", cl_B)->capture_default_str();
  cl->callback([&] {
    action = [&] {
      Run run("classical-limit", common.out_dir);
      const auto ns = parse_int_list(cl_list);
      run.params() = {{"f", cl_f}, {"N_list", ns}, {"J", cl_J}, {"B", cl_B}, {"convention", "pauli"}};
      const auto s = classical_limit_sweep(parse_polynomial(2, cl_f), ns, cl_J, cl_B);
      std::string csv = "N,value,target,error\n";
      for (std::size_t i = 0; i < ns.size(); ++i)
        csv += fmt::format("{},{},{},{}\n", ns[i], num(s.value.points[i].second), num(s.target),
                           num(s.error.points[i].second));
      run.write_text(run.path_for("", "classical_limit.csv"), csv);
      run.finish();
      std::cout << csv;
      return 0;
    };
  });

  // fwhm
  std::string fw_list = "50,100,200,400";
  double fw_ell = 1.0, fw_J = 1.0, fw_B = 0.5;
  int fw_points = 0;
  auto* fw = app.add_subcommand("fwhm", "Half-maximum widths of the Husimi peak");
  fw->add_option("--N-list", fw_list)->capture_default_str();
  fw->add_option("--ell", fw_ell)->check(CLI::IsMember({0.5, 1.0}))->capture_default_str();
  fw->add_option("--points", fw_points, "Scan points per axis (default max(200, 8 sqrt N))");
  fw->add_option("--J", fw_J)->capture_default_str();
  fw->add_option("--B", fw_B)->capture_default_str();
  fw->callback([&] {
    action = [&] {
      Run run("fwhm", common.out_dir);
      const auto ns = parse_int_list(fw_list);
      run.params() = {{"N_list", ns}, {"ell", fw_ell}, {"J", fw_J}, {"B", fw_B}, {"points", fw_points}};
      std::string csv = "N,width_theta,width_phi\n";
      std::vector<double> xs, ws;
      for (int N : ns) {
        const auto f = fwhm_scan(ground_state(N, fw_J, fw_B), fw_ell, fw_points);
        csv += fmt::format("{},{},{}\n", N, num(f.width_theta), num(f.width_phi));
        xs.push_back(N);
        ws.push_back(f.width_theta);
      }
      if (const auto fit = loglog_fit(xs, ws)) run.params()["theta_loglog_slope"] = fit->slope;
      run.write_text(run.path_for("", "fwhm.csv"), csv);
      run.finish();
      std::cout << csv;
      return 0;
    };
  });

  // combinatorics
  int cb_N = 12, cb_L = 2, cb_M = 3;
  auto* cb = app.add_subcommand("combinatorics", "#P(N)_K, C_N/(N-1)! and the type-III fraction");
  cb->add_option("--N", cb_N)->required();
  cb->add_option("--L", cb_L)->required();
  cb->add_option("--M", cb_M)->required();
  cb->callback([&] {
    action = [&] {
      Run run("combinatorics", common.out_dir);
      run.params() = {{"N", cb_N}, {"L", cb_L}, {"M", cb_M}};
      std::string csv = "K,count\n";
      Int128 sum = 0;
      for (int K = 0; K <= cb_L; ++K) {
        const Int128 c = perm_count(cb_N, cb_L, cb_M, K);
        sum += c;
        csv += fmt::format("{},{}\n", K, to_string(c));
      }
      Int128 nfact = 1;
      for (int i = 2; i <= cb_N; ++i) nfact *= i;
      run.params()["sum"] = to_string(sum);
      run.params()["N_factorial"] = to_string(nfact);
      if (cb_N > cb_L + cb_M) run.params()["c_n_ratio"] = c_n_ratio(cb_N, cb_L, cb_M);
      run.params()["p3_fraction"] = p3_fraction(cb_N, cb_L, cb_M);
      run.write_text(run.path_for("", "combinatorics.csv"), csv);
      run.finish();
      std::cout << csv << fmt::format("sum,{}\nN!,{}\n", to_string(sum), to_string(nfact));
      return 0;
    };
  });

  // verify-all
  bool va_quick = false;
  auto* va = app.add_subcommand("verify-all", "Run the acceptance suite");
  va->add_flag("--quick", va_quick, "Shorter sweeps where the criterion allows it");
  va->callback([&] {
    action = [&] {
      AcceptanceOptions opt;
      opt.quick = va_quick;
      opt.on_result = [](const CriterionResult& r) { std::cout << format_result(r) << std::flush; };
      const auto results = run_acceptance(opt);
      int passed = 0, documented = 0;
      for (const auto& r : results) {
        passed += r.pass();
        documented += !r.pass() && r.pass_or_documented();
      }
      const int total = static_cast<int>(results.size());
      std::cout << fmt::format("{}/{} criteria pass, {} fail only on documented unattainable sub-checks, {} fail\n",
                               passed, total, documented, total - passed - documented);
      return passed + documented == total ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int threads = common.threads;
  if (threads <= 0)
    if (const char* env = std::getenv("CWQ_THREADS")) threads = std::atoi(env);
  kernels::set_threads(threads);

  try {
    return action();
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}

}  // namespace cwq
