#ifndef GWF_IO_HPP
#define GWF_IO_HPP

#include <json.hpp>

#include <string>

#include "gwf/harness.hpp"

namespace gwf {

using Json = nlohmann::json;

Json hamiltonian_to_json(const QuadraticHamiltonian& q);
QuadraticHamiltonian hamiltonian_from_json(const Json& j);
QuadraticHamiltonian load_hamiltonian(const std::string& path);

/// Signal files: a JSON header {"d","N","L"} with either a "builtin"
/// object {"name","params"} or a "data_file" path to a raw little-endian
/// interleaved complex-float64 payload (resolved relative to the header).
SampledSignal load_signal(const std::string& path);
void save_signal(const SampledSignal& u, const std::string& path);

Json direction_set_to_json(const DirectionSet& set);
Json wavefront_report_to_json(const WavefrontReport& report,
                              const std::vector<double>& threshold_orders);
Json inclusion_report_to_json(const InclusionReport& report);
Json subspace_to_json(const Subspace& s);

Experiment experiment_from_json(const Json& j);
Experiment load_experiment(const std::string& path);

/// Spectrogram CSV with columns x, xi, re, im, abs (axes flattened for
/// d=2), sampled on a strided lattice.
void write_spectrogram_csv(const SampledSignal& u, const WindowSpec& w,
                           const std::string& path, int x_stride = 64,
                           int xi_stride = 64);

void write_json_file(const Json& j, const std::string& path);
Json read_json_file(const std::string& path);

}  // namespace gwf

#endif
