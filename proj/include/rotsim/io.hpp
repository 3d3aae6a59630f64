#pragma once

#include <string>
#include <vector>

#include "rotsim/detection.hpp"
#include "rotsim/field.hpp"
#include "rotsim/scan.hpp"
#include "rotsim/train.hpp"

// Deterministic persistence: fixed column orders, "%.12g" floats, no
// wall-clock content, LF line endings. Identical inputs produce
// byte-identical files.

namespace rotsim {

std::string format_double(double v);

void write_scan(const std::string& path_base, const ScanResult& result,
                const std::string& format); // csv | json

void write_trace(const std::string& path_base, const DichroismTrace& trace,
                 const std::string& config_hash, const std::string& format);

void write_populations(const std::string& dir, const PopulationScenario& scenario,
                       const std::string& config_hash, const std::string& format);

/// t_fs, intensity, angle_deg columns plus the reduced descriptor as JSON.
void write_train_preview(const std::string& dir, const VectorField& field,
                         const PulseTrainDescriptor& train,
                         const std::string& config_hash);

} // namespace rotsim
