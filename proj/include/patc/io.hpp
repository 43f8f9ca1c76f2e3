#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "patc/grids.hpp"

namespace patc {

inline constexpr std::uint16_t kFormatVersion = 1;

// Detector-sphere binary: magic "PATC", version u16, kind u8, n_polar, n_az,
// n_t as u32, polar_min, t_max, r_det as f64, then the samples as f64,
// (polar, azimuth, time) order, everything little-endian. Files always hold
// hemisphere grids (polar_max = pi/2).
void write_detector(const std::string& path, const DetectorData& data);
DetectorData read_detector(const std::string& path);

// Volume binary: magic "PATV", version u16, n u32, half-width f64, values
// f64 little-endian in x-major order.
void write_volume(const std::string& path, const VolumeGrid& vol);
VolumeGrid read_volume(const std::string& path);

// CSV exports, 17 significant digits.
std::string detector_csv(const DetectorData& data);   // theta_polar,theta_az,t,value
std::string sinogram_csv(const Sinogram2D& sino);     // angle,s,value

// Binary 16-bit PGM (P5, big-endian samples per the format); the linear
// window [lo, hi] mapped onto [0, 65535] is recorded in a comment line.
void write_pgm16(const std::string& path, int width, int height,
                 const std::vector<double>& row_major, double lo, double hi);

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace patc
