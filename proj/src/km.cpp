#include "elci/km.hpp"

namespace elci {

KmGrid::KmGrid(const CensoredSample& sample) : n_(sample.n()) {
    const auto& obs = sample.observations();
    obs_k_.resize(n_);

    // collapse sorted observations into distinct times with event/censor counts
    for (std::size_t i = 0; i < n_; ++i) {
        if (time_.empty() || obs[i].time != time_.back()) {
            time_.push_back(obs[i].time);
            d_.push_back(0);
            c_.push_back(0);
        }
        obs_k_[i] = time_.size() - 1;
        if (obs[i].event) {
            ++d_.back();
        } else {
            ++c_.back();
        }
    }

    const std::size_t m = time_.size();
    at_risk_.resize(m);
    int seen = 0;
    for (std::size_t k = 0; k < m; ++k) {
        at_risk_[k] = static_cast<int>(n_) - seen;
        seen += d_[k] + c_[k];
    }

    fbar_left_.resize(m);
    gbar_left_.resize(m);
    df_.resize(m);
    dg_.resize(m);
    double fbar = 1.0, gbar = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        fbar_left_[k] = fbar;
        gbar_left_[k] = gbar;
        const double risk = static_cast<double>(at_risk_[k]);
        if (d_[k] > 0) {
            df_[k] = fbar * static_cast<double>(d_[k]) / risk;
            fbar *= 1.0 - static_cast<double>(d_[k]) / risk;
        } else {
            df_[k] = 0.0;
        }
        if (c_[k] > 0) {
            dg_[k] = gbar * static_cast<double>(c_[k]) / risk;
            gbar *= 1.0 - static_cast<double>(c_[k]) / risk;
        } else {
            dg_[k] = 0.0;
        }
    }
}

EmpiricalTriple empirical_subdistributions(const CensoredSample& sample) {
    KmGrid grid(sample);
    const std::size_t m = grid.distinct_count();
    const double n = static_cast<double>(grid.n());
    std::vector<double> v0(m), v1(m), v(m);
    int cum0 = 0, cum1 = 0;
    for (std::size_t k = 0; k < m; ++k) {
        cum0 += grid.censorings_at()[k];
        cum1 += grid.events_at()[k];
        v0[k] = static_cast<double>(cum0) / n;
        v1[k] = static_cast<double>(cum1) / n;
        v[k] = static_cast<double>(cum0 + cum1) / n;
    }
    auto knots = grid.times();
    return EmpiricalTriple{
        StepFunction(knots, std::move(v0), 0.0, true),
        StepFunction(knots, std::move(v1), 0.0, true),
        StepFunction(knots, std::move(v), 0.0, true),
    };
}

namespace {

// Keep only the knots where `jump` is positive and emit the cumulative sum.
StepFunction cumulative_from_jumps(const std::vector<double>& times,
                                   const std::vector<double>& jump) {
    std::vector<double> knots, values;
    double acc = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (jump[k] > 0.0) {
            acc += jump[k];
            knots.push_back(times[k]);
            values.push_back(acc);
        }
    }
    return StepFunction(std::move(knots), std::move(values), 0.0, true);
}

}  // namespace

StepFunction km_event(const CensoredSample& sample) {
    KmGrid grid(sample);
    return cumulative_from_jumps(grid.times(), grid.df());
}

StepFunction km_censor(const CensoredSample& sample) {
    KmGrid grid(sample);
    return cumulative_from_jumps(grid.times(), grid.dg());
}

StepFunction psi_n(const CensoredSample& sample, const RealFn& xi) {
    KmGrid grid(sample);
    std::vector<double> knots, tail_after;
    for (std::size_t k = 0; k < grid.distinct_count(); ++k) {
        if (grid.events_at()[k] > 0) knots.push_back(grid.times()[k]);
    }
    tail_after.resize(knots.size());

    // tail sums: value stored at knot e_j is the integral over times > e_j,
    // so psi_n(x) = integral over times >= x comes out as the left limit
    double acc = 0.0;
    std::size_t j = knots.size();
    for (std::size_t k = grid.distinct_count(); k-- > 0;) {
        if (grid.events_at()[k] == 0) continue;
        --j;
        tail_after[j] = acc;
        acc += xi(grid.times()[k]) * grid.df()[k];
    }
    return StepFunction(std::move(knots), std::move(tail_after), acc);
}

double km_integral(const CensoredSample& sample, const RealFn& xi) {
    KmGrid grid(sample);
    double acc = 0.0;
    for (std::size_t k = grid.distinct_count(); k-- > 0;) {
        if (grid.events_at()[k] > 0) acc += xi(grid.times()[k]) * grid.df()[k];
    }
    return acc;
}

}  // namespace elci
