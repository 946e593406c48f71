#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <vector>

namespace nsbench {

/// Dense 2-D array of doubles sized to the full grid including the ghost
/// layers. Storage is i-fastest, so sweeping a grid line in x walks memory
/// contiguously.
class Field2D {
public:
    Field2D() = default;
    Field2D(int m, int n, double fill = 0.0)
        : m_(m), n_(n), v_(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), fill) {}

    int m() const { return m_; }
    int n() const { return n_; }
    bool same_shape(const Field2D& o) const { return m_ == o.m_ && n_ == o.n_; }

    double& operator()(int i, int j) {
        assert(i >= 0 && i < m_ && j >= 0 && j < n_);
        return v_[idx(i, j)];
    }
    double operator()(int i, int j) const {
        assert(i >= 0 && i < m_ && j >= 0 && j < n_);
        return v_[idx(i, j)];
    }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    std::size_t size() const { return v_.size(); }

    void fill(double x) { std::fill(v_.begin(), v_.end(), x); }

    friend bool operator==(const Field2D&, const Field2D&) = default;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(i);
    }

    int m_ = 0, n_ = 0;
    std::vector<double> v_;
};

} // namespace nsbench
