// Copyright 2026 The cdmpo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cdmpo/bridge.hpp"
#include "cdmpo/errors.hpp"
#include "cdmpo/fermion.hpp"
#include "cdmpo/lcu.hpp"
#include "cdmpo/mpo.hpp"
#include "cdmpo/mps.hpp"
#include "cdmpo/pauli_io.hpp"
#include "cdmpo/sampler.hpp"
#include "cdmpo/varopt.hpp"
#include "manifest.hpp"

namespace cdmpo::cli {
namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kNumerical = 3;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedFile, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::MalformedFile, "cannot write " + path);
  os << text;
}

std::string num(double x) { return format_coefficient(cplx{x, 0.0}); }

bool has_suffix(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Io {
  Manifest manifest;
  std::string output;

  explicit Io(std::string command) : manifest(std::move(command)) {}

  std::string read(const std::string& path) {
    std::string bytes = read_text(path);
    manifest.input(path, bytes);
    return bytes;
  }
  void emit(const std::string& path, const std::string& text) {
    write_text(path, text);
    if (!path.empty() && path != "-") manifest.output(path);
  }
};

PauliSum read_operator(Io& io, const std::string& path) {
  return parse_pauli_sum(io.read(path));
}

std::vector<PauliString> read_pool(Io& io, const std::string& path) {
  const PauliSum op = read_operator(io, path);
  std::vector<PauliString> pool;
  pool.reserve(op.size());
  for (const auto& t : op.terms()) pool.push_back(t.string);
  return pool;
}

// compile -----------------------------------------------------------------

struct CompileCmd {
  std::string input;
  std::string output;
  std::size_t cut = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("compile", "Split a Pauli sum into fragment dictionaries and a bridge");
    sub->add_option("input", input, "Pauli-sum text file")->required();
    sub->add_option("--cut", cut, "Sites in the left half (default N/2)")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
    sub->add_option("-o,--output", output, "Bridge JSON (default stdout)");
    sub->callback([this] { run(); });
  }

  void run() {
    Io io("compile");
    const PauliSum op = read_operator(io, input);
    const auto d = compile(op, cut == 0 ? std::nullopt : std::optional<std::size_t>(cut));
    io.emit(output, bridge_to_json(d));
    io.manifest.parameter("cut", std::to_string(d.cut));
    io.manifest.write();
    std::cerr << "left fragments " << d.left.size() << ", right fragments " << d.right.size()
              << ", bridge entries " << d.bridge.entries.size() << "\n";
  }
};

// mpo ---------------------------------------------------------------------

struct MpoCmd {
  std::string input;
  std::string output;
  double tol = 1e-12;
  std::size_t max_bond = 0;
  bool verify = false;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("mpo", "Build an MPO by the pivoted-QR sweep");
    sub->add_option("input", input, "Pauli-sum text file")->required();
    sub->add_option("--tol", tol, "Relative rank tolerance on the R diagonal")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--max-bond", max_bond, "Compress to at most this bond dimension");
    sub->add_flag("--verify", verify, "Report the dense reconstruction error");
    sub->add_option("-o,--output", output, "MPO JSON");
    sub->callback([this] { run(); });
  }

  void run() {
    Io io("mpo");
    const PauliSum op = read_operator(io, input);
    Mpo m = build_mpo_qr(op, tol);
    if (max_bond > 0) {
      const CompressionResult c = compress(m, tol, max_bond);
      m = c.mpo;
      std::cout << "discarded_weight " << num(c.total_discarded()) << "\n";
    }
    std::cout << "bond_dims";
    for (std::size_t chi : m.bond_dims()) std::cout << ' ' << chi;
    std::cout << "\n";
    if (verify) {
      const Matrix exact = to_dense(op);
      const double err = (mpo_to_dense(m) - exact).norm() / std::max(exact.norm(), 1e-300);
      std::cout << "reconstruction_error " << num(err) << "\n";
    }
    if (!output.empty()) io.emit(output, mpo_to_json(m));
    io.manifest.parameter("tol", num(tol));
    io.manifest.parameter("max_bond", std::to_string(max_bond));
    io.manifest.write();
  }
};

// jw ----------------------------------------------------------------------

struct JwCmd {
  std::string input;
  std::string output;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("jw", "Jordan-Wigner map of a fermionic Hamiltonian");
    sub->add_option("input", input, "Fermionic Hamiltonian JSON")->required();
    sub->add_option("-o,--output", output, "Pauli-sum text (default stdout)");
    sub->callback([this] { run(); });
  }

  void run() {
    Io io("jw");
    const FermionHamiltonian h = parse_fermion_json(io.read(input));
    std::vector<std::string> warnings;
    const PauliSum op = map_hamiltonian(h.terms, h.n_sites, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    io.emit(output, format_pauli_sum(op));
    io.manifest.write();
  }
};

// groundstate ---------------------------------------------------------------

struct GroundStateCmd {
  std::string input;
  std::string output;
  std::size_t chi = 16;
  std::size_t dense_limit = kDefaultDenseLimit;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("groundstate", "Dense ground state as a right-canonical MPS");
    sub->add_option("input", input, "Pauli-sum text file")->required();
    sub->add_option("--chi", chi, "Maximum bond dimension")->check(CLI::PositiveNumber);
    sub->add_option("--dense-limit", dense_limit, "Largest qubit count diagonalized densely");
    sub->add_option("-o,--output", output, "MPS JSON")->required();
    sub->callback([this] { run(); });
  }

  void run() {
    Io io("groundstate");
    const PauliSum h = read_operator(io, input);
    std::vector<std::string> warnings;
    const auto g = ground_state_reference(h, chi, dense_limit, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    io.emit(output, mps_to_json(g.mps));
    std::cout << "energy " << num(g.energy) << "\nmps_energy " << num(g.mps_energy)
              << "\noverlap " << num(g.overlap) << "\ngap " << num(g.gap) << "\n";
    io.manifest.parameter("chi", std::to_string(chi));
    io.manifest.parameter("dense_limit", std::to_string(dense_limit));
    io.manifest.write();
  }
};

// sample ------------------------------------------------------------------

struct SampleCmd {
  std::string input;
  std::string output;
  std::string polar_csv;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("sample", "Draw Pauli strings from a right-canonical MPS");
    sub->add_option("input", input, "MPS JSON")->required();
    sub->add_option("--n-samples", n_samples, "Number of draws")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Sampler seed");
    sub->add_option("--polar-csv", polar_csv, "Also write the polar-plot table");
    sub->add_option("-o,--output", output, "Pool text")->required();
    sub->callback([this] { run(); });
  }

  void run() {
    Io io("sample");
    const Mps m = mps_from_json(io.read(input));
    const SampledPool pool = sample_strings(m, {.n_samples = n_samples, .seed = seed});
    std::ostringstream os;
    write_pool_text(os, pool);
    io.emit(output, os.str());
    if (!polar_csv.empty()) {
      std::ostringstream csv;
      write_polar_csv(csv, pool);
      io.emit(polar_csv, csv.str());
    }
    std::cerr << "distinct strings " << pool.entries.size() << "\n";
    io.manifest.parameter("n_samples", std::to_string(n_samples));
    io.manifest.parameter("seed", std::to_string(seed));
    io.manifest.write();
  }
};

// curate ------------------------------------------------------------------

struct CurateCmd {
  std::string input;
  std::string output;
  std::size_t keep_iz = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("curate", "Select the operator pool from sampled strings");
    sub->add_option("input", input, "Pool text")->required();
    sub->add_option("--keep-iz", keep_iz, "Number of diagonal strings to keep");
    sub->add_option("-o,--output", output, "Pool as a unit-coefficient Pauli sum")->required();
    sub->callback([this] { run(); });
  }

  void run() {
    Io io("curate");
    std::istringstream is(io.read(input));
    const SampledPool pool = curate(read_pool_text(is), keep_iz);
    if (pool.curated.empty()) throw Error(ErrorCode::EmptyInput, "curated pool is empty");
    std::string text = "# curated pool: " + std::to_string(pool.pool_size()) + " strings\n";
    for (const auto& c : pool.curated) {
      text += "1 " + c.string.str() + "  # " + std::string(to_string(c.tag)) + "\n";
    }
    io.emit(output, text);
    io.manifest.parameter("keep_iz", std::to_string(keep_iz));
    io.manifest.write();
  }
};

// optimize ------------------------------------------------------------------

struct OptimizeCmd {
  std::string hamiltonian;
  std::string pool_path;
  std::string reference;
  std::string output;
  std::string bridge_out;
  std::size_t cut = 0;
  std::string solver = "dense";
  std::optional<double> reg;
  std::string mps_path;
  std::vector<std::size_t> grid;
  std::string sweep_csv;
  std::uint64_t seed = 0;
  std::size_t keep_iz = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("optimize", "Ritz coefficients on a pool, or an energy sweep");
    sub->add_option("hamiltonian", hamiltonian, "Pauli-sum text file")->required();
    sub->add_option("pool", pool_path, "Curated pool (Pauli-sum text)");
    sub->add_option("--reference", reference, "Reference basis state, e.g. 1100")->required();
    sub->add_option("--solver", solver, "dense or lobpcg")
        ->check(CLI::IsMember({"dense", "lobpcg"}));
    sub->add_option("--reg", reg, "Shift added to the overlap matrix");
    sub->add_option("-o,--output", output, "Coefficients as Pauli-sum text (default stdout)");
    sub->add_option("--cut", cut, "Cut for --bridge-out (default N/2)");
    sub->add_option("--bridge-out", bridge_out, "Bridge JSON over the pool dictionaries");
    sub->add_option("--mps", mps_path, "Reference MPS for --grid");
    sub->add_option("--grid", grid, "Sample counts for the sweep, increasing")->delimiter(',');
    sub->add_option("--sweep-csv", sweep_csv, "Sweep table");
    sub->add_option("--seed", seed, "Sampler seed for the sweep");
    sub->add_option("--keep-iz", keep_iz, "Diagonal strings kept per sweep point");
    sub->callback([this] { run(); });
  }

  void run() {
    Io io("optimize");
    const PauliSum h = read_operator(io, hamiltonian);
    const BasisState phi0 = BasisState::parse(reference);
    io.manifest.parameter("reference", reference);
    if (!grid.empty()) {
      run_sweep(io, h, phi0);
    } else {
      if (pool_path.empty()) throw CLI::ValidationError("optimize", "a pool file or --grid is required");
      run_pool(io, h, phi0);
    }
    io.manifest.write();
  }

  void run_sweep(Io& io, const PauliSum& h, const BasisState& phi0) {
    if (mps_path.empty()) throw CLI::ValidationError("--grid", "--grid needs --mps");
    const Mps m = mps_from_json(io.read(mps_path));
    const auto rows = energy_vs_samples_sweep(
        h, m, grid, {.n_samples = grid.back(), .seed = seed, .keep_iz = keep_iz}, phi0);
    std::ostringstream os;
    write_sweep_csv(os, rows);
    io.emit(sweep_csv.empty() ? output : sweep_csv, os.str());
    io.manifest.parameter("seed", std::to_string(seed));
    io.manifest.parameter("keep_iz", std::to_string(keep_iz));
  }

  void run_pool(Io& io, const PauliSum& h, const BasisState& phi0) {
    const std::vector<PauliString> pool = read_pool(io, pool_path);
    const EffectivePencil p = assemble_pencil(h, pool, phi0);
    RitzSolution sol;
    if (solver == "lobpcg") {
      LobpcgOptions opts;
      opts.reg = reg;
      sol = solve_ritz_lobpcg(p, opts);
      if (!sol.converged) std::cerr << "warning: LOBPCG did not converge\n";
    } else {
      RitzOptions opts;
      opts.reg = reg;
      sol = solve_ritz_dense(p, opts);
    }
    std::string text = "# energy " + num(sol.energy) + "\n";
    for (std::size_t j = 0; j < pool.size(); ++j) {
      text += format_coefficient(sol.coefficients(static_cast<Eigen::Index>(j))) + " " +
              pool[j].str() + "\n";
    }
    io.emit(output, text);
    std::cerr << "energy " << num(sol.energy) << ", retained " << sol.retained_dim << " of "
              << p.dim() << "\n";
    if (!bridge_out.empty()) {
      std::vector<PauliTerm> unit;
      for (const auto& s : pool) unit.push_back({cplx{1.0, 0.0}, s});
      const auto d0 = compile(PauliSum(h.n_sites(), unit),
                              cut == 0 ? std::nullopt : std::optional<std::size_t>(cut));
      io.emit(bridge_out, bridge_to_json(coefficients_to_bridge(d0, pool, sol.coefficients)));
    }
    io.manifest.parameter("solver", solver);
    io.manifest.parameter("reg", reg ? num(*reg) : "default");
  }
};

// lcu -----------------------------------------------------------------------

struct LcuCmd {
  std::string input;
  std::string output;
  std::string gates;
  std::size_t cut = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("lcu", "Compile a Prep/Select program");
    sub->add_option("input", input, "Bridge JSON, or Pauli-sum text with --cut")->required();
    sub->add_option("--cut", cut, "Cut when the input is a Pauli sum (default N/2)");
    sub->add_option("-o,--output", output, "LCU program JSON")->required();
    sub->add_option("--gates", gates, "Also write the gate listing");
    sub->callback([this] { run(); });
  }

  void run() {
    Io io("lcu");
    const std::string bytes = io.read(input);
    const BridgeDecomposition d =
        has_suffix(input, ".json")
            ? bridge_from_json(bytes)
            : compile(parse_pauli_sum(bytes),
                      cut == 0 ? std::nullopt : std::optional<std::size_t>(cut));
    const LcuProgram prog = compile_lcu(d);
    io.emit(output, lcu_to_json(prog));
    if (!gates.empty()) io.emit(gates, emit_gates(prog));
    std::cout << "lambda " << num(prog.lambda) << "\nancillas " << prog.ancillas()
              << "\nselect_hash " << prog.select_hash << "\n";
    io.manifest.write();
  }
};

// update ------------------------------------------------------------------

struct UpdateCmd {
  std::string program;
  std::string bridge;
  std::string output;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("update", "Load new coefficients into a compiled program");
    sub->add_option("program", program, "LCU program JSON")->required();
    sub->add_option("bridge", bridge, "Bridge JSON with the new coefficients")->required();
    sub->add_option("-o,--output", output, "Updated program JSON")->required();
    sub->callback([this] { run(); });
  }

  void run() {
    Io io("update");
    const LcuProgram prog = lcu_from_json(io.read(program));
    const LcuProgram up = update_coefficients(prog, bridge_from_json(io.read(bridge)));
    io.emit(output, lcu_to_json(up));
    std::cout << "lambda " << num(up.lambda) << "\nselect_hash " << up.select_hash << "\n";
    io.manifest.write();
  }
};

// verify ------------------------------------------------------------------

struct VerifyCmd {
  std::string program;
  std::string op_path;
  std::string reference;
  double tol = 1e-10;
  bool failed = false;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("verify", "Dense check of the block-encoding identity");
    sub->add_option("program", program, "LCU program JSON")->required();
    sub->add_option("--operator", op_path,
                    "Bridge JSON or Pauli-sum text to compare against (default: the program's own)");
    sub->add_option("--reference", reference, "Also report p_succ for this basis state");
    sub->add_option("--tol", tol, "Largest accepted error")->check(CLI::NonNegativeNumber);
    sub->callback([this] { run(); });
  }

  void run() {
    Io io("verify");
    const LcuProgram prog = lcu_from_json(io.read(program));
    PauliSum g = lcu_operator(prog);
    if (!op_path.empty()) {
      const std::string bytes = io.read(op_path);
      g = has_suffix(op_path, ".json") ? reconstruct(bridge_from_json(bytes)) : parse_pauli_sum(bytes);
    }
    const BlockEncoding be = block_encoding_dense(prog);
    const Matrix target = to_dense(g) / prog.lambda;
    const double block_error = (be.block - target).cwiseAbs().maxCoeff();
    const double error = std::max(block_error, be.prep_norm_error);
    if (!reference.empty()) {
      std::cout << "p_succ " << num(be.success_probability(BasisState::parse(reference).dense()))
                << "\n";
    }
    failed = error > tol;
    std::cout << (failed ? "FAIL" : "PASS") << " block_error " << num(block_error)
              << " prep_norm_error " << num(be.prep_norm_error) << " select_hash "
              << (compute_select_hash(prog) == prog.select_hash ? "ok" : "mismatch") << "\n";
  }
};

}  // namespace
}  // namespace cdmpo::cli

int main(int argc, char** argv) {
  using namespace cdmpo::cli;
  CLI::App app{"cdmpo: Pauli-sum compiler, MPO/LCU lowering and pool optimization"};
  app.set_version_flag("--version", CDMPO_VERSION);
  app.require_subcommand(1);
  CompileCmd compile_cmd;
  MpoCmd mpo_cmd;
  JwCmd jw_cmd;
  GroundStateCmd ground_cmd;
  SampleCmd sample_cmd;
  CurateCmd curate_cmd;
  OptimizeCmd optimize_cmd;
  LcuCmd lcu_cmd;
  UpdateCmd update_cmd;
  VerifyCmd verify_cmd;
  compile_cmd.add(app);
  mpo_cmd.add(app);
  jw_cmd.add(app);
  ground_cmd.add(app);
  sample_cmd.add(app);
  curate_cmd.add(app);
  optimize_cmd.add(app);
  lcu_cmd.add(app);
  update_cmd.add(app);
  verify_cmd.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const cdmpo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cdmpo::is_numerical(e.code()) ? kNumerical : kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return verify_cmd.failed ? kNumerical : 0;
}
