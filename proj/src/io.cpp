#include "gwf/io.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>

namespace gwf {

namespace fs = std::filesystem;

namespace {

RMat real_matrix_from_json(const Json& j, int rows, int cols,
                           const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(rows) + " rows");
  RMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw std::invalid_argument(std::string(what) + ": row " +
                                  std::to_string(i) + " must have " +
                                  std::to_string(cols) + " entries");
    for (int k = 0; k < cols; ++k) {
      if (!row[k].is_number())
        throw std::invalid_argument(std::string(what) + ": non-numeric entry");
      m(i, k) = row[k].get<double>();
    }
  }
  return m;
}

Json real_matrix_to_json(const RMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vec_to_json(const RVec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

int require_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw std::invalid_argument(std::string("missing integer field \"") + key +
                                "\"");
  return j[key].get<int>();
}

double require_double(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw std::invalid_argument(std::string("missing numeric field \"") + key +
                                "\"");
  return j[key].get<double>();
}

}  // namespace

Json hamiltonian_to_json(const QuadraticHamiltonian& q) {
  Json j;
  j["d"] = q.dim_d;
  j["Q_re"] = real_matrix_to_json(q.Q.real());
  j["Q_im"] = real_matrix_to_json(q.Q.imag());
  return j;
}

QuadraticHamiltonian hamiltonian_from_json(const Json& j) {
  int d = require_int(j, "d");
  if (d < 1) throw std::invalid_argument("hamiltonian: d must be positive");
  int n2 = 2 * d;
  RMat re = real_matrix_from_json(j.at("Q_re"), n2, n2, "Q_re");
  RMat im = j.contains("Q_im")
                ? real_matrix_from_json(j.at("Q_im"), n2, n2, "Q_im")
                : RMat::Zero(n2, n2);
  CMat q = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  return QuadraticHamiltonian(q, d);
}

QuadraticHamiltonian load_hamiltonian(const std::string& path) {
  return hamiltonian_from_json(read_json_file(path));
}

SampledSignal load_signal(const std::string& path) {
  Json j = read_json_file(path);
  int d = require_int(j, "d");
  int n = require_int(j, "N");
  double L = require_double(j, "L");

  if (j.contains("builtin")) {
    const Json& b = j["builtin"];
    std::string name = b.at("name").get<std::string>();
    std::vector<double> params;
    if (b.contains("params"))
      for (const auto& p : b["params"]) params.push_back(p.get<double>());
    return build_signal(name, params, d, n, L);
  }
  if (!j.contains("data_file"))
    throw std::invalid_argument(
        "signal header needs \"builtin\" or \"data_file\"");

  fs::path payload =
      fs::path(path).parent_path() / j["data_file"].get<std::string>();
  SampledSignal u(d, n, L);
  std::ifstream in(payload, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open payload " + payload.string());
  std::vector<double> raw(2 * u.values.size());
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(raw.size() * sizeof(double)))
    throw std::invalid_argument("payload " + payload.string() +
                                " truncated: expected " +
                                std::to_string(raw.size() * sizeof(double)) +
                                " bytes");
  for (std::size_t i = 0; i < u.values.size(); ++i)
    u.values[i] = Complex(raw[2 * i], raw[2 * i + 1]);
  u.validate();
  return u;
}

void save_signal(const SampledSignal& u, const std::string& path) {
  fs::path header(path);
  fs::path payload = header;
  payload.replace_extension(".bin");

  Json j;
  j["d"] = u.dim_d;
  j["N"] = u.n;
  j["L"] = u.half_extent;
  j["data_file"] = payload.filename().string();
  write_json_file(j, path);

  std::vector<double> raw(2 * u.values.size());
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    raw[2 * i] = u.values[i].real();
    raw[2 * i + 1] = u.values[i].imag();
  }
  std::ofstream out(payload, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + payload.string());
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(double)));
}

Json direction_set_to_json(const DirectionSet& set) {
  Json j;
  j["angular_resolution"] = set.angular_resolution();
  Json dirs = Json::array();
  for (const auto& v : set.dirs()) dirs.push_back(vec_to_json(v));
  j["directions"] = std::move(dirs);
  return j;
}

Json wavefront_report_to_json(const WavefrontReport& report,
                              const std::vector<double>& threshold_orders) {
  Json j;
  j["angular_resolution"] = report.angular_resolution;
  j["unreliable_fraction"] = report.unreliable_fraction();
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json entry;
    entry["direction"] = vec_to_json(e.dir);
    if (std::isinf(e.order))
      entry["order"] = "inf";
    else
      entry["order"] = e.order;
    entry["residual"] = e.residual;
    entry["reliable"] = e.reliable;
    entries.push_back(std::move(entry));
  }
  j["estimates"] = std::move(entries);
  Json thresholds = Json::array();
  for (double s : threshold_orders) {
    Json t;
    t["s"] = s;
    t["set"] = direction_set_to_json(report.threshold(s));
    thresholds.push_back(std::move(t));
  }
  j["thresholds"] = std::move(thresholds);
  return j;
}

Json inclusion_report_to_json(const InclusionReport& report) {
  Json j;
  j["pass"] = report.pass;
  j["inconclusive"] = report.inconclusive;
  Json cases = Json::array();
  for (const auto& c : report.cases) {
    Json cj;
    cj["t"] = c.t;
    cj["s"] = c.s;
    cj["r"] = c.r;
    cj["observed_input"] = direction_set_to_json(c.observed_input);
    cj["predicted"] = direction_set_to_json(c.predicted);
    cj["observed_output"] = direction_set_to_json(c.observed_output);
    Json viols = Json::array();
    for (const auto& v : c.violations) {
      Json vj;
      vj["direction"] = vec_to_json(v.dir);
      vj["angle_to_predicted"] = v.angle_to_predicted;
      viols.push_back(std::move(vj));
    }
    cj["violations"] = std::move(viols);
    cj["unreliable_fraction"] = c.unreliable_fraction;
    cj["inconclusive"] = c.inconclusive;
    cj["pass"] = c.pass;
    cases.push_back(std::move(cj));
  }
  j["cases"] = std::move(cases);
  return j;
}

Json subspace_to_json(const Subspace& s) {
  Json j;
  j["ambient_dim"] = s.ambient_dim();
  j["dim"] = s.dim();
  Json basis = Json::array();
  for (int k = 0; k < s.dim(); ++k) basis.push_back(vec_to_json(s.basis().col(k)));
  j["basis"] = std::move(basis);
  return j;
}

Experiment experiment_from_json(const Json& j) {
  Experiment e;
  if (j.contains("preset")) {
    int d = j.contains("d") ? require_int(j, "d") : 1;
    std::vector<double> params;
    if (j.contains("params"))
      for (const auto& p : j["params"]) params.push_back(p.get<double>());
    e = preset(j["preset"].get<std::string>(), d, params);
  } else {
    e.dim_d = require_int(j, "d");
    QuadraticHamiltonian q = hamiltonian_from_json(j);
    e.Q = q.Q;
    e.grid = GridSpec::defaults(e.dim_d);
    if (!j.contains("signal"))
      throw std::invalid_argument("experiment: missing \"signal\"");
    if (!j.contains("rule"))
      throw std::invalid_argument("experiment: missing \"rule\"");
  }

  if (j.contains("signal")) {
    const Json& sj = j["signal"];
    e.signal.name = sj.at("name").get<std::string>();
    e.signal.params.clear();
    if (sj.contains("params"))
      for (const auto& p : sj["params"])
        e.signal.params.push_back(p.get<double>());
  }
  if (j.contains("window")) {
    std::string w = j["window"].get<std::string>();
    if (w == "gaussian")
      e.window = WindowSpec::gaussian();
    else if (w.rfind("hermite_", 0) == 0)
      e.window = WindowSpec::hermite(std::stoi(w.substr(8)));
    else
      throw std::invalid_argument("unknown window " + w);
  }
  if (j.contains("grid")) {
    const Json& g = j["grid"];
    if (g.contains("n")) e.grid.n = require_int(g, "n");
    if (g.contains("L")) e.grid.half_extent = require_double(g, "L");
    if (g.contains("directions")) e.grid.directions = require_int(g, "directions");
    if (g.contains("r_min")) e.grid.r_min = require_double(g, "r_min");
    if (g.contains("r_max")) e.grid.r_max = require_double(g, "r_max");
    if (g.contains("rho")) e.grid.rho = require_double(g, "rho");
    if (g.contains("tube_width"))
      e.grid.tube_width = require_double(g, "tube_width");
  }
  if (j.contains("times")) {
    e.times.clear();
    for (const auto& t : j["times"]) e.times.push_back(t.get<double>());
  }
  if (j.contains("orders")) {
    e.orders.clear();
    for (const auto& s : j["orders"]) e.orders.push_back(s.get<double>());
  }
  if (j.contains("rule"))
    e.rule = budget_rule_from_string(j["rule"].get<std::string>());
  if (j.contains("epsilon")) e.epsilon = require_double(j, "epsilon");
  if (j.contains("stub_empty_predicted"))
    e.stub_empty_predicted = j["stub_empty_predicted"].get<bool>();

  if (e.times.empty() || e.orders.empty())
    throw std::invalid_argument("experiment: times and orders must be nonempty");
  return e;
}

Experiment load_experiment(const std::string& path) {
  return experiment_from_json(read_json_file(path));
}

void write_spectrogram_csv(const SampledSignal& u, const WindowSpec& w,
                           const std::string& path, int x_stride,
                           int xi_stride) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);

  if (u.dim_d == 1) {
    out << "x,xi,re,im,abs\n";
    auto lattice = stft_lattice_1d(u, w, x_stride);
    double dxi = 2 * std::numbers::pi / (u.n * u.spacing());
    for (std::size_t r = 0; r < lattice.size(); ++r) {
      double x = u.coord(static_cast<int>(r) * x_stride);
      for (int c = 0; c < u.n; c += xi_stride) {
        double xi = (c - u.n / 2) * dxi;
        Complex v = lattice[r][c];
        out << x << ',' << xi << ',' << v.real() << ',' << v.imag() << ','
            << std::abs(v) << '\n';
      }
    }
    return;
  }

  out << "x1,x2,xi1,xi2,re,im,abs\n";
  double dxi = u.freq_step();
  std::vector<RVec> points;
  for (int j1 = 0; j1 < u.n; j1 += x_stride)
    for (int j2 = 0; j2 < u.n; j2 += x_stride)
      for (int k1 = -u.n / 2; k1 < u.n / 2; k1 += xi_stride)
        for (int k2 = -u.n / 2; k2 < u.n / 2; k2 += xi_stride) {
          RVec z(4);
          z << u.coord(j1), u.coord(j2), k1 * dxi, k2 * dxi;
          points.push_back(z);
        }
  std::vector<Complex> vals = stft(u, w, points);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const RVec& z = points[i];
    out << z(0) << ',' << z(1) << ',' << z(2) << ',' << z(3) << ','
        << vals[i].real() << ',' << vals[i].imag() << ',' << std::abs(vals[i])
        << '\n';
  }
}

void write_json_file(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw std::invalid_argument(std::string("JSON parse error in ") + path +
                                ": " + ex.what());
  }
  return j;
}

}  // namespace gwf
