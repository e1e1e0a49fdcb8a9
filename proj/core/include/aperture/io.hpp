#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "aperture/imaging.hpp"
#include "aperture/msr.hpp"

namespace aperture {

/// Free-form string metadata carried in the MSR file's "meta" object.
using MetaMap = std::map<std::string, std::string>;

/// msr-v1 JSON document: format, k, m, curve, normalization
/// ("phi-to-plane-wave": a point source at z radiates e^{-ik xhat.z}),
/// entries as [re, im] pairs in row order (row = incident index), mask,
/// provenance tags and the meta object. Numbers are written in the shortest
/// decimal form that parses back to the identical double, so write-then-read
/// is bit exact.
void write_msr(const std::filesystem::path& path, const MsrMatrix& msr,
               const MetaMap& meta = {});
MsrMatrix read_msr(const std::filesystem::path& path, MetaMap* meta = nullptr);

/// CSV with header "x,y,value", row major from (x_min, y_min), 17
/// significant digits.
void write_grid_csv(const std::filesystem::path& path, const ImagingGrid& grid);
ImagingGrid read_grid_csv(const std::filesystem::path& path);

/// Plain PGM (P2), maxval 255, top row at y_max; values are normalized
/// before quantization.
void write_grid_pgm(const std::filesystem::path& path, const ImagingGrid& grid);

/// Write-temp-then-rename so readers never observe a partial file.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

/// Flat "key = value" configuration text; '#' starts a comment, blank lines
/// are skipped, later duplicates win. Key validation is the caller's job.
std::map<std::string, std::string> parse_flat_config(const std::filesystem::path& path);

}  // namespace aperture
