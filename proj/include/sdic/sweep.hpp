#pragma once

// Parameter sweeps over one or two axes. Cells are independent and evaluated
// with OpenMP; the serial kernel is kept as the reference the parallel one is
// tested against. Output order is row-major in the axes regardless of
// completion order.

#include "sdic/gaussian.hpp"
#include "sdic/mc_oracle.hpp"
#include "sdic/param_spec.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sdic {

enum class CheckKind { VsIc, VsIcCurves, VsZic, StrongIc, StrongZic, WeakIc, WeakZic };

std::optional<CheckKind> parse_check(std::string_view s);
std::string_view to_string(CheckKind k);

struct Axis {
    std::string param;
    double lo = 0.0;
    double hi = 1.0;
    int steps = 2;

    double value(int i) const { return i + 1 == steps ? hi : lo + (hi - lo) * i / (steps - 1); }
};

/// "name:lo:hi:steps"; throws UsageError on malformed input.
Axis parse_axis(std::string_view text);

struct SweepGrid {
    CheckKind check = CheckKind::VsIc;
    std::vector<Axis> axes;
    ParamSpec fixed;
    double log_base = kBits;

    /// Throws UsageError unless 1-2 axes, steps >= 2, lo < hi, known names,
    /// and no axis duplicates a fixed parameter.
    void validate() const;
    std::size_t cell_count() const;
};

struct SweepCell {
    std::vector<double> coords;
    /// achieves | fails | out_of_regime | ordering_violated | invalid
    std::string verdict;
    /// Same order as margin_names(check); nullopt prints as an empty field.
    std::vector<std::optional<double>> margins;
    std::vector<std::optional<double>> rates;
};

const std::vector<std::string>& margin_names(CheckKind k);
const std::vector<std::string>& rate_names(CheckKind k);

/// Evaluates one parameter set through the library's check for `k`.
SweepCell evaluate_cell(CheckKind k, const ParamSpec& params, double log_base = kBits);

std::vector<SweepCell> run_sweep(const SweepGrid& grid, Exec exec = Exec::Parallel);

inline constexpr const char* kCsvSchemaVersion = "1";

/// A "# schema_version=1" line, then the header: axis columns, verdict,
/// margins, rates. Floats with 12 significant digits.
void write_csv(std::ostream& os, const SweepGrid& grid, const std::vector<SweepCell>& cells);

std::string format_number(double v);

/// Applies SDIC_THREADS (if set to a positive integer) as the OpenMP thread cap.
void apply_thread_cap_from_env();

} // namespace sdic
