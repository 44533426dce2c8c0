#pragma once

#include <string>
#include <vector>

#include "sirfb/frontfix.hpp"
#include "sirfb/outcome.hpp"

namespace sirfb {

/// Time-series CSV with the fixed header
/// t,h,dhdt,sup_S,sup_I,sup_R,mass_I,balance_residual
/// and 17-significant-digit decimal values. Deterministic: identical
/// series give byte-identical files.
std::string series_csv(const std::vector<Frame>& series);
void write_series_csv(const std::string& path, const std::vector<Frame>& series);

/// Profile snapshot CSV (header r,S,I,R), one file per frame, rows at the
/// physical nodes with I and R mapped back from computational coordinates.
std::string profile_csv(const ProfileFrame& frame, const GridSpec& grid);
void write_profile_csvs(const std::string& dir,
                        const std::vector<ProfileFrame>& profiles,
                        const GridSpec& grid);

/// Self-contained SVG line chart of h(t) and sup I(t).
std::string svg_chart(const std::vector<Frame>& series);
void write_svg_chart(const std::string& path, const std::vector<Frame>& series);

} // namespace sirfb
