#include "biphoton/mzi.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "biphoton/errors.hpp"
#include "biphoton/fourier.hpp"
#include "biphoton/interference.hpp"
#include "biphoton/states.hpp"

namespace biphoton {
namespace {

constexpr double kPi = std::numbers::pi;

double envelope(double theta, SppParams spp, MziPhases phases) {
  return std::sin(spp.zeta * (theta - kPi) + phases.alpha_plus);
}

void require_throughput(double eta) {
  if (!(eta >= kMinThroughput)) {
    throw DegenerateAmplitudeError("no amplitude reaches the last beamsplitter (throughput " +
                                   std::to_string(eta) + ")");
  }
}

int worker_count(int requested, int rows) {
  int threads = requested;
  if (threads <= 0) {
    if (const char* env = std::getenv("BIPHOTON_THREADS")) threads = std::atoi(env);
  }
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, std::min(threads, rows));
}

}  // namespace

MziPhases MziPhases::from_raw(const RawMziPhases& raw) {
  const double common = raw.phi + raw.phi1_tau + raw.phi2_tau;
  const double diff = raw.phi1_rho - raw.phi2_rho;
  return {0.5 * (common + diff), 0.5 * (common - diff)};
}

std::vector<std::string> validate_geometry(const MziGeometry& geom) {
  if (!(geom.z1 >= 0.0) || !(geom.z2 >= 0.0)) {
    throw std::invalid_argument("propagation distances must be non-negative");
  }
  if (!(geom.k > 0.0)) throw std::invalid_argument("wavenumber must be positive");
  if (!(geom.aperture_factor > 0.0)) throw std::invalid_argument("aperture factor must be positive");
  std::vector<std::string> notes;
  if (geom.aperture_factor < 4.0) {
    notes.push_back("aperture factor " + std::to_string(geom.aperture_factor) +
                    " is below 4; the finite-aperture result will not approach the "
                    "delta-correlated limit");
  }
  return notes;
}

TwoPhotonAmplitude fresnel_phase(const TwoPhotonAmplitude& amp, double z1, double z2, double k) {
  if (amp.representation() != Representation::kMomentum) {
    throw std::invalid_argument("fresnel_phase acts on momentum-representation amplitudes");
  }
  if (!(k > 0.0)) throw std::invalid_argument("wavenumber must be positive");
  const Grid& grid = amp.grid();
  auto propagator = [&](double z) {
    return TransverseMode::sample(grid, Representation::kMomentum, [&](double qx, double qy) {
             return std::polar(1.0, k * z - (qx * qx + qy * qy) * z / (2.0 * k));
           }).values();
  };
  const ModeArray p1 = propagator(z1);
  const ModeArray p2 = propagator(z2);
  std::vector<ProductTerm> terms;
  terms.reserve(amp.terms().size());
  for (const auto& t : amp.terms()) {
    terms.push_back({t.coefficient, t.photon1.multiplied(p1), t.photon2.multiplied(p2)});
  }
  return TwoPhotonAmplitude(std::move(terms));
}

TransverseMode spp_phase(const TransverseMode& mode, double zeta) {
  const ModeArray phase = TransverseMode::sample(mode.grid(), mode.representation(),
                                                 [&](double u, double v) {
                                                   return std::polar(1.0, zeta * azimuth(u, v));
                                                 }).values();
  return mode.multiplied(phase);
}

ModeArray mzi_envelope(const Grid& grid, SppParams spp, MziPhases phases) {
  return TransverseMode::sample(grid, Representation::kPosition, [&](double x, double y) {
           return Complex(envelope(azimuth(x, y), spp, phases));
         }).values();
}

EffectiveAmplitude<TwoPhotonAmplitude> mzi_effective_amplitude(const TwoPhotonAmplitude& amp,
                                                               SppParams spp, MziPhases phases) {
  if (amp.representation() != Representation::kPosition) {
    throw std::invalid_argument("the phase plates act on position-representation amplitudes");
  }
  require_normalized(amp.norm_squared(), "mzi_effective_amplitude");
  TwoPhotonAmplitude out = multiply_photon1(amp, mzi_envelope(amp.grid(), spp, phases));
  const double eta = out.norm_squared();
  require_throughput(eta);
  return {out.scaled(1.0 / std::sqrt(eta)), eta};
}

EffectiveAmplitude<SeparableKernelAmplitude> mzi_effective_amplitude(
    const SeparableKernelAmplitude& amp, SppParams spp, MziPhases phases) {
  if (amp.representation() != Representation::kPosition) {
    throw std::invalid_argument("the phase plates act on position-representation amplitudes");
  }
  require_normalized(amp.norm_squared(), "mzi_effective_amplitude");
  SeparableKernelAmplitude out = amp.multiplied_photon1(mzi_envelope(amp.grid(), spp, phases));
  const double eta = out.norm_squared();
  require_throughput(eta);
  return {out.scaled(1.0 / std::sqrt(eta)), eta};
}

PreparedSource prepare_source(const MziSource& source, const MziGeometry& geom) {
  validate_geometry(geom);
  if (const auto* thin = std::get_if<ThinCrystalSource>(&source)) {
    if (geom.z1 != geom.z2) {
      throw std::invalid_argument("the thin-crystal source needs equal arm lengths z1 == z2");
    }
    const GaussianBeamParams beam{thin->w0, geom.z1, 2.0 * geom.k};
    const Grid grid = make_grid(thin->grid_n, geom.aperture_factor * beam.spot_size());
    return thin_crystal_kernel(beam, grid, {thin->keep_phase, ApertureShape::kCircular});
  }
  const auto& amp = std::get<TwoPhotonAmplitude>(source);
  if (amp.representation() == Representation::kPosition) return amp;
  return position_representation(fresnel_phase(amp, geom.z1, geom.z2, geom.k));
}

MziResult mzi_coincidence(const PreparedSource& source, SppParams spp, MziPhases phases) {
  return std::visit(
      [&](const auto& amp) {
        const auto effective = mzi_effective_amplitude(amp, spp, phases);
        return MziResult{coincidence_probability(effective.amplitude), effective.throughput,
                         spp.zeta, phases.alpha_plus};
      },
      source);
}

MziResult mzi_coincidence(const MziSource& source, SppParams spp, MziPhases phases,
                          const MziGeometry& geom) {
  return mzi_coincidence(prepare_source(source, geom), spp, phases);
}

double delta_limit_oracle(SppParams spp, MziPhases phases, int nodes) {
  if (nodes < 4096) throw std::invalid_argument("the angular oracle needs at least 4096 nodes");
  const double step = 2.0 * kPi / nodes;
  double overlap = 0.0;
  double norm = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double theta = (i + 0.5) * step;
    double partner = kPi - theta;
    if (partner < 0.0) partner += 2.0 * kPi;
    const double s = envelope(theta, spp, phases);
    overlap += s * envelope(partner, spp, phases);
    norm += s * s;
  }
  overlap *= step;
  norm *= step;
  if (!(norm >= 1e-12)) {
    throw DegenerateAmplitudeError("angular envelope vanishes identically");
  }
  return 0.5 * (1.0 - overlap / norm);
}

std::string_view to_string(ScanParameter p) {
  return p == ScanParameter::kZeta ? "zeta" : "alpha_plus";
}

ScanResult scan(const ScanRequest& request) {
  if (request.steps < 2) throw std::invalid_argument("a scan needs at least 2 steps");
  if (!(request.lo < request.hi)) throw std::invalid_argument("scan range needs lo < hi");
  const PreparedSource source = prepare_source(request.source, request.geometry);
  const int grid_points = std::visit([](const auto& a) { return a.grid().size(); }, source);

  std::vector<ScanRow> rows(static_cast<std::size_t>(request.steps));
  const double step = (request.hi - request.lo) / (request.steps - 1);
  auto evaluate = [&](int i) {
    const double value = i == request.steps - 1 ? request.hi : request.lo + i * step;
    SppParams spp = request.spp;
    MziPhases phases = request.phases;
    if (request.parameter == ScanParameter::kZeta) {
      spp.zeta = value;
    } else {
      phases.alpha_plus = value;
    }
    ScanRow row{value, std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::quiet_NaN(), 0.0, false};
    try {
      const MziResult r = mzi_coincidence(source, spp, phases);
      row.conditional_pc = r.conditional_pc;
      row.throughput = r.throughput;
      row.oracle_pc = delta_limit_oracle(spp, phases);
    } catch (const DegenerateAmplitudeError&) {
      row.degenerate = true;
    }
    rows[static_cast<std::size_t>(i)] = row;
  };

  const int workers = worker_count(request.threads, request.steps);
  if (workers == 1) {
    for (int i = 0; i < request.steps; ++i) evaluate(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
    {
      std::vector<std::jthread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (int i = next++; i < request.steps; i = next++) evaluate(i);
          } catch (...) {
            failures[static_cast<std::size_t>(w)] = std::current_exception();
            next = request.steps;
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }
  return {request, grid_points, std::move(rows)};
}

}  // namespace biphoton
