#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sicnet/netmodel.hpp"

namespace sicnet {

enum class TailMode { compensate_mean, drop };

/// Truncated sampling of a path loss process with intensity measure
/// intensity_scale * r^beta (intensity_scale = 1 is the standard process).
struct SamplerConfig {
    double beta = 0.5;
    std::size_t n_points = 1000;
    TailMode tail_mode = TailMode::compensate_mean;
    std::uint64_t master_seed = 1;
    std::optional<double> mark_prob;
    double intensity_scale = 1.0;
};

void validate(const SamplerConfig& cfg);

/// Mean of sum_{xi > rho} 1/xi for intensity scale * r^beta.
double tail_interference_mean(double beta, double intensity_scale, double rho);

/// One truncated realization: increasing path losses xi_1 < ... < xi_n,
/// optional access marks, and the compensated residual interference from
/// points beyond xi_n.
class PlpfRealization {
public:
    PlpfRealization() = default;
    PlpfRealization(std::vector<double> xi, std::vector<std::uint8_t> marks, double tail_mean);

    std::size_t size() const { return xi_.size(); }
    std::span<const double> xi() const { return xi_; }
    /// 1-based access, matching the usual xi_1 < xi_2 < ... indexing.
    double xi(std::size_t i) const { return xi_[i - 1]; }
    bool has_marks() const { return !marks_.empty(); }
    std::span<const std::uint8_t> marks() const { return marks_; }
    bool accessible(std::size_t i) const { return marks_[i - 1] != 0; }
    double tail_mean() const { return tail_mean_; }

    /// I_k = sum_{j > k} 1/xi_j + tail, for 0 <= k <= size().
    double interference(std::size_t k) const
    {
        return suffix_[k];
    }

private:
    std::vector<double> xi_;
    std::vector<std::uint8_t> marks_;
    double tail_mean_ = 0.0;
    std::vector<double> suffix_;
};

/// Checked version of PlpfRealization::interference; throws std::out_of_range.
double suffix_interference(const PlpfRealization& r, std::size_t k);

/// Realization `replicate_index` of the configured process. Deterministic in
/// (master_seed, replicate_index).
PlpfRealization sample_splpf(const SamplerConfig& cfg, std::uint64_t replicate_index);

/// Multiplies every xi by c and rescales the tail accordingly.
PlpfRealization scale_realization(const PlpfRealization& r, double c);

/// Samples the network in R^d directly (ball-count inversion for the n
/// nearest transmitters, then fading marks) and maps it to path losses
/// xi = |x|^alpha / h. The interference from transmitters beyond the
/// n-th radius is replaced by its mean.
PlpfRealization sample_ppnf(const NetworkParams& net, std::size_t n_points, std::uint64_t master_seed,
                            std::uint64_t replicate_index);

/// Debug dump with columns index,xi,mark.
void write_realization_csv(std::ostream& os, const PlpfRealization& r);

}  // namespace sicnet
