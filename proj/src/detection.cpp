#include "sqz/detection.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "sqz/csv.hpp"

namespace sqz {

namespace {

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0,1], got " +
                      std::to_string(v));
  }
}

// Deterministic standard-normal generator: splitmix64 bits -> Box-Muller.
// Avoids std::normal_distribution, whose output is implementation-defined.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : state_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 1e-300) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

double effective_efficiency(const DetectionChain& chain) {
  check_unit_interval(chain.path_transmission, "path_transmission");
  check_unit_interval(chain.quantum_efficiency, "quantum_efficiency");
  check_unit_interval(chain.visibility, "visibility");
  return chain.path_transmission * chain.quantum_efficiency *
         chain.visibility * chain.visibility;
}

double detect(const GaussianState& state, const DetectionChain& chain,
              double phi) {
  const double eta = effective_efficiency(chain);
  const GaussianState attenuated = apply_loss(state, eta);
  return quadrature_variance(attenuated, phi) / kVacuumVariance;
}

double infer_source_db(double measured_db, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError("eta must lie in (0,1], got " + std::to_string(eta));
  }
  const double measured_snu = std::pow(10.0, measured_db / 10.0);
  const double floor = 1.0 - eta;
  if (measured_snu <= floor) {
    throw UnphysicalError("measured " + format_g9(measured_snu) +
                          " SNU is at or below the vacuum floor " +
                          format_g9(floor) + " for eta=" + format_g9(eta));
  }
  const double source_snu = (measured_snu - floor) / eta;
  return 10.0 * std::log10(source_snu);
}

HomodyneScan synthesize_scan(const GaussianState& state,
                             const DetectionChain& chain,
                             const std::vector<double>& phi_grid,
                             std::int64_t samples_per_point,
                             std::uint64_t seed) {
  if (phi_grid.empty()) throw DomainError("phase grid is empty");
  if (samples_per_point < 0) throw DomainError("samples_per_point < 0");
  if (samples_per_point == 1) {
    throw DomainError("sample variance needs at least 2 draws per point");
  }
  HomodyneScan scan;
  scan.samples.reserve(phi_grid.size());
  NormalSampler normal(seed);
  for (double phi : phi_grid) {
    const double v = detect(state, chain, phi);
    ScanSample s;
    s.phi_rad = phi;
    s.samples = samples_per_point;
    if (samples_per_point == 0) {
      s.variance_snu = v;
    } else {
      const double sigma = std::sqrt(v);
      double sum = 0.0, sum2 = 0.0;
      for (std::int64_t i = 0; i < samples_per_point; ++i) {
        const double x = sigma * normal();
        sum += x;
        sum2 += x * x;
      }
      const double n = static_cast<double>(samples_per_point);
      s.variance_snu = (sum2 - sum * sum / n) / (n - 1.0);
    }
    scan.samples.push_back(s);
  }
  return scan;
}

CovarianceFit fit_covariance(const HomodyneScan& scan) {
  const std::size_t n = scan.samples.size();
  if (n < 3) throw RankDeficientError("need at least 3 scan points");
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd target(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = scan.samples[i].phi_rad;
    const double c = std::cos(phi), s = std::sin(phi);
    design(i, 0) = c * c;
    design(i, 1) = s * s;
    design(i, 2) = std::sin(2.0 * phi);
    target(i) = scan.samples[i].variance_snu;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0 || sv(2) < 1e-10 * sv(0)) {
    throw RankDeficientError(
        "scan phases do not determine all three covariance parameters");
  }
  const Eigen::Vector3d coeff = svd.solve(target);
  const double rms =
      std::sqrt((design * coeff - target).squaredNorm() / double(n));
  CovarianceFit fit;
  fit.state.mean.setZero();
  fit.state.cov << coeff(0), coeff(2), coeff(2), coeff(1);
  fit.state.cov *= kVacuumVariance;  // SNU -> quadrature units
  fit.residual = rms;
  return fit;
}

WignerGrid wigner_grid(const GaussianState& state, double half_width,
                       int n_points) {
  if (n_points < 2) throw DomainError("n_points must be >= 2");
  if (!(half_width > 0.0)) throw DomainError("half_width must be > 0");
  WignerGrid grid;
  grid.half_width = half_width;
  grid.n_points = n_points;
  grid.values.resize(n_points, n_points);
  const double step = 2.0 * half_width / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double p = -half_width + step * i;
    for (int j = 0; j < n_points; ++j) {
      const double x = -half_width + step * j;
      grid.values(i, j) = wigner(state, x, p);
    }
  }
  return grid;
}

void write_scan_csv(std::ostream& out, const HomodyneScan& scan) {
  out << "phi_rad,variance_snu,samples\n";
  for (const auto& s : scan.samples) {
    out << format_g9(s.phi_rad) << ',' << format_g9(s.variance_snu) << ','
        << s.samples << '\n';
  }
}

HomodyneScan read_scan_csv(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  const CsvTable table = parse_csv(buf.str());
  const std::size_t c_phi = table.column_index("phi_rad");
  const std::size_t c_var = table.column_index("variance_snu");
  const std::size_t c_n = table.column_index("samples");
  HomodyneScan scan;
  scan.samples.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    ScanSample s;
    s.phi_rad = table.number_at(r, c_phi);
    s.variance_snu = table.number_at(r, c_var);
    s.samples = static_cast<std::int64_t>(table.number_at(r, c_n));
    scan.samples.push_back(s);
  }
  if (scan.samples.empty()) throw ParseError("scan has no data rows");
  return scan;
}

void write_wigner_csv(std::ostream& out, const WignerGrid& grid) {
  out << "# half_width=" << format_g9(grid.half_width) << '\n';
  out << "# n=" << grid.n_points << '\n';
  for (int i = 0; i < grid.n_points; ++i) {
    for (int j = 0; j < grid.n_points; ++j) {
      if (j) out << ',';
      out << format_g9(grid.values(i, j));
    }
    out << '\n';
  }
}

}  // namespace sqz
