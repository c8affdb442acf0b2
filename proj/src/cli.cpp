#include "biphoton/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "biphoton/errors.hpp"
#include "biphoton/interference.hpp"
#include "biphoton/mzi.hpp"
#include "biphoton/states.hpp"

namespace biphoton::cli {
namespace {

/// Raised for invalid user input; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error("--" + key + ": " + what) {}
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string state;
  int l = 1;
  std::optional<int> l1;
  std::optional<int> l2;
  double w0 = 1.0;
  std::string pump = "g00";
  double crystal_length = 1.0;
  bool no_phase = false;

  std::optional<int> grid_n;
  std::optional<double> half_width;
  double aperture_factor = 40.0;

  std::optional<double> zeta;
  std::optional<double> alpha_plus;
  std::optional<double> phi;
  std::optional<double> phi1_tau;
  std::optional<double> phi1_rho;
  std::optional<double> phi2_tau;
  std::optional<double> phi2_rho;
  std::optional<double> z;
  double k = 1.0;
  bool mzi = false;

  std::string parameter = "zeta";
  int steps = 16;
  std::optional<std::string> range;
  std::string out;
  double margin = kDefaultWitnessMargin;
  int threads = 0;
};

enum class StateKind { kBell, kProduct, kSpdc, kThinCrystal };

struct StateSpec {
  StateKind kind;
  BellKind bell = BellKind::kPsiPlus;
};

StateSpec parse_state(const std::string& text) {
  if (text.empty()) throw ConfigError("state", "a state is required");
  if (text.rfind("bell:", 0) == 0) {
    const std::string kind = text.substr(5);
    for (BellKind k : {BellKind::kPsiPlus, BellKind::kPsiMinus, BellKind::kPhiPlus,
                       BellKind::kPhiMinus}) {
      if (kind == to_string(k)) return {StateKind::kBell, k};
    }
    throw ConfigError("state", "unknown Bell state '" + kind +
                                   "' (psi-plus, psi-minus, phi-plus, phi-minus)");
  }
  if (text == "product") return {StateKind::kProduct};
  if (text == "spdc") return {StateKind::kSpdc};
  if (text == "thin-crystal") return {StateKind::kThinCrystal};
  throw ConfigError("state", "unknown state '" + text +
                                 "' (bell:<kind>, product, spdc, thin-crystal)");
}

HermiteGaussPump parse_pump(const std::string& text, double w0) {
  if (text == "g00") return {0, 0, w0};
  int m = -1;
  int n = -1;
  char tail = 0;
  if (std::sscanf(text.c_str(), "hg:%d,%d%c", &m, &n, &tail) == 2 && m >= 0 && n >= 0) {
    return {m, n, w0};
  }
  throw ConfigError("pump", "expected g00 or hg:<m>,<n> with non-negative indices, got '" +
                                text + "'");
}

std::pair<double, double> parse_range(const std::string& text) {
  double lo = 0.0;
  double hi = 0.0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf%c", &lo, &hi, &tail) != 2 || !std::isfinite(lo) ||
      !std::isfinite(hi)) {
    throw ConfigError("range", "expected <lo>:<hi>, got '" + text + "'");
  }
  if (!(lo < hi)) throw ConfigError("range", "needs lo < hi");
  return {lo, hi};
}

void require_positive(double value, const char* key) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError(key, "must be positive");
}

int grid_points(const RunConfig& cfg, int fallback) {
  const int n = cfg.grid_n.value_or(fallback);
  if (n < kMinGridPoints || n % 2 != 0) {
    throw ConfigError("grid-n", "must be even and at least " + std::to_string(kMinGridPoints));
  }
  return n;
}

MziPhases scheme_phases(const RunConfig& cfg) {
  const bool raw = cfg.phi || cfg.phi1_tau || cfg.phi1_rho || cfg.phi2_tau || cfg.phi2_rho;
  if (raw && cfg.alpha_plus) {
    throw ConfigError("alpha-plus", "give either alpha-plus or the raw phases, not both");
  }
  if (raw) {
    return MziPhases::from_raw({cfg.phi.value_or(0.0), cfg.phi1_tau.value_or(0.0),
                                cfg.phi1_rho.value_or(0.0), cfg.phi2_tau.value_or(0.0),
                                cfg.phi2_rho.value_or(0.0)});
  }
  return {cfg.alpha_plus.value_or(0.0), 0.0};
}

MziGeometry scheme_geometry(const RunConfig& cfg) {
  require_positive(cfg.k, "k");
  require_positive(cfg.aperture_factor, "aperture-factor");
  // Default distance: one Rayleigh length of the pump, z0 = k_p w0^2 / 2 = k w0^2.
  const double z = cfg.z.value_or(cfg.k * cfg.w0 * cfg.w0);
  if (!(z >= 0.0)) throw ConfigError("z", "must be non-negative");
  return {z, z, cfg.k, cfg.aperture_factor};
}

/// A constructed state in whichever form its factory produces.
struct BuiltState {
  std::variant<TwoPhotonAmplitude, SeparableKernelAmplitude> amplitude;
  std::string description;
  std::optional<double> truncation_error;
};

BuiltState build_state(const RunConfig& cfg, const StateSpec& spec) {
  require_positive(cfg.w0, "w0");
  std::ostringstream desc;
  switch (spec.kind) {
    case StateKind::kBell: {
      if (cfg.l == 0) throw ConfigError("l", "Bell states need l != 0");
      const int n = grid_points(cfg, 64);
      const double hw = cfg.half_width.value_or(10.0 / cfg.w0);
      require_positive(hw, "half-width");
      desc << "bell:" << to_string(spec.bell) << " l=" << cfg.l << " grid=" << n;
      return {bell_state(spec.bell, cfg.l, cfg.w0, make_grid(n, hw)), desc.str(), std::nullopt};
    }
    case StateKind::kProduct: {
      const int n = grid_points(cfg, 64);
      const double hw = cfg.half_width.value_or(10.0 / cfg.w0);
      require_positive(hw, "half-width");
      const Grid grid = make_grid(n, hw);
      const int l1 = cfg.l1.value_or(cfg.l);
      const int l2 = cfg.l2.value_or(cfg.l);
      desc << "product l1=" << l1 << " l2=" << l2 << " grid=" << n;
      return {product_state(oam_ring(l1, cfg.w0, grid), oam_ring(l2, cfg.w0, grid)), desc.str(),
              std::nullopt};
    }
    case StateKind::kSpdc: {
      const int n = grid_points(cfg, 32);
      const double hw = cfg.half_width.value_or(8.0 / cfg.w0);
      require_positive(hw, "half-width");
      require_positive(cfg.crystal_length, "crystal-length");
      require_positive(cfg.k, "k");
      const SpdcParams params{cfg.crystal_length, 2.0 * cfg.k, parse_pump(cfg.pump, cfg.w0)};
      const Grid grid = make_grid(n, hw);
      if (grid.spacing() > 1.0 / cfg.w0) {
        throw ConfigError("grid-n", "momentum grid too coarse for the pump waist");
      }
      auto compressed = spdc_state(params, grid);
      desc << "spdc pump=" << cfg.pump << " L=" << cfg.crystal_length << " grid=" << n
           << " rank=" << compressed.amplitude.rank();
      return {std::move(compressed.amplitude), desc.str(), compressed.truncation_error};
    }
    case StateKind::kThinCrystal: {
      const int n = grid_points(cfg, 256);
      const MziGeometry geom = scheme_geometry(cfg);
      const GaussianBeamParams beam{cfg.w0, geom.z1, 2.0 * geom.k};
      const Grid grid = make_grid(n, geom.aperture_factor * beam.spot_size());
      desc << "thin-crystal z=" << geom.z1 << " aperture-factor=" << geom.aperture_factor
           << " grid=" << n << (cfg.no_phase ? " (phase stripped)" : "");
      return {thin_crystal_kernel(beam, grid, {!cfg.no_phase, ApertureShape::kCircular}),
              desc.str(), std::nullopt};
    }
  }
  throw ConfigError("state", "unsupported state");
}

MziSource mzi_source(const RunConfig& cfg, const StateSpec& spec) {
  if (spec.kind == StateKind::kThinCrystal) {
    return ThinCrystalSource{cfg.w0, grid_points(cfg, 256), !cfg.no_phase};
  }
  BuiltState built = build_state(cfg, spec);
  return std::get<TwoPhotonAmplitude>(std::move(built.amplitude));
}

std::string fixed(double value, int digits = 6) {
  if (std::isnan(value)) return "nan";
  const double shown = std::abs(value) < 0.5 * std::pow(10.0, -digits) ? 0.0 : value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, shown);
  return buf;
}

std::string classify_label(const SymmetryWeights& w) {
  constexpr double kThreshold = 1e-6;
  if (w.antisymmetric < kThreshold) return "symmetric";
  if (w.symmetric < kThreshold) return "antisymmetric";
  return "mixed";
}

void warn_geometry(const MziGeometry& geom, std::ostream& err) {
  for (const auto& note : validate_geometry(geom)) err << "warning: " << note << "\n";
}

int cmd_pc(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const StateSpec spec = parse_state(cfg.state);
  if (cfg.margin < 0.0) throw ConfigError("margin", "must be non-negative");
  if (cfg.mzi) {
    const MziGeometry geom = scheme_geometry(cfg);
    warn_geometry(geom, err);
    const SppParams spp{cfg.zeta.value_or(1.0)};
    const MziPhases phases = scheme_phases(cfg);
    const MziResult r = mzi_coincidence(mzi_source(cfg, spec), spp, phases, geom);
    out << "state = " << cfg.state << " through MZI (zeta=" << spp.zeta
        << ", alpha_plus=" << phases.alpha_plus << ")\n"
        << "P_c = " << fixed(r.conditional_pc) << "\n"
        << "throughput = " << fixed(r.throughput) << "\n"
        << "delta_limit_P_c = " << fixed(delta_limit_oracle(spp, phases)) << "\n"
        << "witness = "
        << to_string(r.conditional_pc > 0.5 + cfg.margin ? WitnessVerdict::kEntangled
                                                         : WitnessVerdict::kInconclusive)
        << "\n";
    return kSuccess;
  }
  const BuiltState built = build_state(cfg, spec);
  std::visit(
      [&](const auto& amp) {
        const SymmetryWeights w = symmetry_decompose(amp);
        const double pc = w.antisymmetric;
        out << "state = " << built.description << "\n"
            << "P_c = " << fixed(pc) << "\n"
            << "symmetric_weight = " << fixed(w.symmetric) << "\n"
            << "antisymmetric_weight = " << fixed(w.antisymmetric) << "\n"
            << "witness = "
            << to_string(pc > 0.5 + cfg.margin ? WitnessVerdict::kEntangled
                                               : WitnessVerdict::kInconclusive)
            << "\n";
      },
      built.amplitude);
  if (built.truncation_error) {
    out << "truncation_error = " << *built.truncation_error << "\n";
  }
  return kSuccess;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const StateSpec spec = parse_state(cfg.state);
  const BuiltState built = build_state(cfg, spec);
  const SymmetryWeights w =
      std::visit([](const auto& amp) { return symmetry_decompose(amp); }, built.amplitude);
  out << "state = " << built.description << "\n"
      << "symmetric_weight = " << fixed(w.symmetric) << "\n"
      << "antisymmetric_weight = " << fixed(w.antisymmetric) << "\n"
      << "class = " << classify_label(w) << "\n";
  return kSuccess;
}

void write_csv(const ScanResult& result, std::ostream& csv) {
  csv << "parameter,conditional_pc,oracle_pc,throughput,flag\n";
  for (const auto& row : result.rows) {
    csv << fixed(row.parameter, 10) << ',' << fixed(row.conditional_pc, 10) << ','
        << fixed(row.oracle_pc, 10) << ',' << fixed(row.throughput, 10) << ','
        << (row.degenerate ? "degenerate" : "ok") << '\n';
  }
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ScanRequest request;
  if (cfg.parameter == "zeta") {
    request.parameter = ScanParameter::kZeta;
  } else if (cfg.parameter == "alpha-plus") {
    request.parameter = ScanParameter::kAlphaPlus;
  } else {
    throw ConfigError("parameter", "expected zeta or alpha-plus, got '" + cfg.parameter + "'");
  }
  if (cfg.steps < 2) throw ConfigError("steps", "a scan needs at least 2 steps");
  const auto [lo, hi] = parse_range(cfg.range.value_or(
      request.parameter == ScanParameter::kZeta ? "0.25:4" : "0:3.141592653589793"));
  request.lo = lo;
  request.hi = hi;
  request.steps = cfg.steps;
  request.spp = {cfg.zeta.value_or(1.0)};
  request.phases = scheme_phases(cfg);
  request.geometry = scheme_geometry(cfg);
  request.threads = cfg.threads;
  const StateSpec spec = parse_state(cfg.state.empty() ? "thin-crystal" : cfg.state);
  request.source = mzi_source(cfg, spec);
  warn_geometry(request.geometry, err);

  // Open the destination before the computation so a bad path fails fast.
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open output file '" + cfg.out + "'");
  }
  const ScanResult result = scan(request);
  std::ostream& csv = cfg.out.empty() ? out : static_cast<std::ostream&>(file);
  write_csv(result, csv);
  csv.flush();
  if (!csv) throw IoError("failed writing CSV output");

  if (!cfg.out.empty()) {
    const auto degenerate = std::count_if(result.rows.begin(), result.rows.end(),
                                          [](const ScanRow& r) { return r.degenerate; });
    out << "# scan " << to_string(request.parameter) << " over [" << lo << ", " << hi << "], "
        << request.steps << " rows, grid " << result.grid_points << ", aperture factor "
        << request.geometry.aperture_factor << "\n"
        << (request.parameter == ScanParameter::kZeta ? "# fixed alpha_plus=" : "# fixed zeta=")
        << (request.parameter == ScanParameter::kZeta ? request.phases.alpha_plus
                                                       : request.spp.zeta)
        << "\n"
        << "# degenerate rows: " << degenerate << "\n"
        << "# wrote " << cfg.out << "\n";
  }
  return kSuccess;
}

void add_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--state", cfg.state,
                 "bell:{psi-plus,psi-minus,phi-plus,phi-minus} | product | spdc | thin-crystal");
  app.add_option("--l", cfg.l, "OAM index for Bell and product states");
  app.add_option("--l1", cfg.l1, "OAM index of photon 1 for product states (default --l)");
  app.add_option("--l2", cfg.l2, "OAM index of photon 2 for product states (default --l)");
  app.add_option("--w0", cfg.w0, "beam waist (length units)");
  app.add_option("--pump", cfg.pump, "SPDC pump mode: g00 | hg:<m>,<n>");
  app.add_option("--crystal-length", cfg.crystal_length, "SPDC crystal length L");
  app.add_flag("--no-phase", cfg.no_phase, "strip the propagation phase of the thin-crystal state");
  app.add_option("--grid-n", cfg.grid_n, "points per grid axis (even, >= 8)");
  app.add_option("--half-width", cfg.half_width, "momentum grid half-width (inverse length)");
  app.add_option("--aperture-factor", cfg.aperture_factor,
                 "aperture radius in units of the spot size w(z)");
  app.add_option("--zeta", cfg.zeta, "spiral phase plate parameter");
  app.add_option("--alpha-plus", cfg.alpha_plus, "aggregate MZI phase alpha_+ (radians)");
  app.add_option("--phi", cfg.phi, "phase shifter (raw phase alternative to --alpha-plus)");
  app.add_option("--phi1-tau", cfg.phi1_tau, "BS1 transmission phase");
  app.add_option("--phi1-rho", cfg.phi1_rho, "BS1 reflection phase");
  app.add_option("--phi2-tau", cfg.phi2_tau, "BS2 transmission phase");
  app.add_option("--phi2-rho", cfg.phi2_rho, "BS2 reflection phase");
  app.add_option("--z", cfg.z, "propagation distance z1 = z2 (default: one Rayleigh length)");
  app.add_option("--k", cfg.k, "photon wavenumber; the pump has 2k");
  app.add_flag("--mzi", cfg.mzi, "pc: send the state through the MZI scheme first");
  app.add_option("--parameter", cfg.parameter, "scan: zeta | alpha-plus");
  app.add_option("--steps", cfg.steps, "scan: number of rows (>= 2)");
  app.add_option("--range", cfg.range, "scan: <lo>:<hi>");
  app.add_option("--out", cfg.out, "scan: CSV output path (default stdout)");
  app.add_option("--margin", cfg.margin, "witness margin above 1/2");
  app.add_option("--threads", cfg.threads, "scan worker threads (default BIPHOTON_THREADS)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-photon interference in transverse modes"};
  app.name("biphoton");
  RunConfig cfg;
  add_options(app, cfg);
  app.set_config("--config", "", "flat key = value file; keys are the long flag names")
      ->check(CLI::ExistingFile);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.footer(
      "Config file: one 'key = value' per line using the long flag names without dashes,\n"
      "e.g. 'state = \"bell:psi-minus\"' or 'grid-n = 64'. Flags override the file.\n"
      "Exit codes: 0 ok, 2 configuration error, 3 numerical degeneracy, 4 I/O error.");
  auto* pc = app.add_subcommand("pc", "coincidence probability, symmetry weights, witness");
  auto* scan_cmd = app.add_subcommand("scan", "zeta or alpha_+ scan of the MZI scheme as CSV");
  auto* classify = app.add_subcommand("classify", "symmetric / antisymmetric / mixed");
  for (auto* sub : {pc, scan_cmd, classify}) sub->fallthrough();
  app.require_subcommand(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    if (pc->parsed()) return cmd_pc(cfg, out, err);
    if (scan_cmd->parsed()) return cmd_scan(cfg, out, err);
    return cmd_classify(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const DegenerateAmplitudeError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const TruncationError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace biphoton::cli
