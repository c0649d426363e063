#pragma once

// Discrete calculus on uniform periodic grids and on closed immersed curves.
//
// Samples live at theta_k = 2*pi*k/N, N even and N >= 8. Every ambient vector
// is stored as an Eigen 3-vector: plane curves occupy the z = 0 slice, sphere
// curves lie on the unit sphere.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "norbrack/errors.hpp"

namespace norbrack {

using Vec3 = Eigen::Vector3d;
/// One row per grid node.
using Points = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;

enum class Ambient { plane, sphere };

const char* to_string(Ambient ambient);
Ambient ambient_from_string(const std::string& name);
int ambient_dim(Ambient ambient);

void validate_grid(std::size_t n);
double grid_spacing(std::size_t n);
double grid_theta(std::size_t n, std::size_t k);

class PeriodicScalarField {
public:
    explicit PeriodicScalarField(Eigen::VectorXd samples);

    static PeriodicScalarField constant(std::size_t n, double value);

    template <class Fn>
    static PeriodicScalarField from_function(std::size_t n, Fn&& fn)
    {
        validate_grid(n);
        Eigen::VectorXd s(static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < n; ++k)
            s[static_cast<Eigen::Index>(k)] = fn(grid_theta(n, k));
        return PeriodicScalarField(std::move(s));
    }

    std::size_t grid_n() const { return static_cast<std::size_t>(samples_.size()); }
    const Eigen::VectorXd& samples() const { return samples_; }
    double operator[](std::size_t k) const { return samples_[static_cast<Eigen::Index>(k)]; }

    double max_abs() const { return samples_.cwiseAbs().maxCoeff(); }
    double min() const { return samples_.minCoeff(); }
    double max() const { return samples_.maxCoeff(); }

    friend PeriodicScalarField operator+(const PeriodicScalarField& lhs, const PeriodicScalarField& rhs);
    friend PeriodicScalarField operator-(const PeriodicScalarField& lhs, const PeriodicScalarField& rhs);
    /// Pointwise product.
    friend PeriodicScalarField operator*(const PeriodicScalarField& lhs, const PeriodicScalarField& rhs);
    friend PeriodicScalarField operator*(double scale, const PeriodicScalarField& field);
    friend PeriodicScalarField operator-(const PeriodicScalarField& field);

private:
    Eigen::VectorXd samples_;
};

/// Throws GridMismatch unless both grids have the same node count.
void require_same_grid(std::size_t lhs, std::size_t rhs, const char* context);

class DiscreteImmersion {
public:
    /// Validates grid size, finiteness, the ambient constraint (z = 0 in the
    /// plane, unit norm within 1e-12 on the sphere) and the immersion condition.
    DiscreteImmersion(Points points, Ambient ambient);

    static DiscreteImmersion plane(const Eigen::Ref<const Eigen::MatrixX2d>& xy);
    /// Normalizes every point onto the unit sphere before validating.
    static DiscreteImmersion sphere_retract(Points points);

    std::size_t grid_n() const { return static_cast<std::size_t>(points_.rows()); }
    Ambient ambient() const { return ambient_; }
    const Points& points() const { return points_; }
    Vec3 point(std::size_t k) const { return points_.row(static_cast<Eigen::Index>(k)).transpose(); }

private:
    Points points_;
    Ambient ambient_;
};

/// Projects each row of `vectors` onto the ambient tangent space at the
/// matching node of `points` (drops z in the plane, removes the radial part
/// on the sphere).
Points project_tangent(Ambient ambient, const Points& points, const Points& vectors);

class ImmersionTangent {
public:
    /// Vectors are projected onto the ambient tangent space at `base`.
    ImmersionTangent(const DiscreteImmersion& base, Points vectors);

    static ImmersionTangent zero(const DiscreteImmersion& base);

    std::size_t grid_n() const { return static_cast<std::size_t>(vectors_.rows()); }
    const Points& vectors() const { return vectors_; }
    Vec3 vector(std::size_t k) const { return vectors_.row(static_cast<Eigen::Index>(k)).transpose(); }

    /// Largest pointwise Euclidean norm.
    double max_norm() const;

    friend ImmersionTangent operator+(const ImmersionTangent& lhs, const ImmersionTangent& rhs);
    friend ImmersionTangent operator-(const ImmersionTangent& lhs, const ImmersionTangent& rhs);
    friend ImmersionTangent operator*(double scale, const ImmersionTangent& h);
    friend ImmersionTangent operator*(const PeriodicScalarField& scale, const ImmersionTangent& h);

private:
    explicit ImmersionTangent(Points vectors)
        : vectors_(std::move(vectors))
    {
    }

    Points vectors_;
};

/// max_k |lhs_k - rhs_k|.
double max_distance(const ImmersionTangent& lhs, const ImmersionTangent& rhs);

/// Pointwise Euclidean inner product of two vector sequences.
PeriodicScalarField pointwise_dot(const Points& lhs, const Points& rhs);
PeriodicScalarField pointwise_dot(const ImmersionTangent& lhs, const ImmersionTangent& rhs);

struct Frame {
    ImmersionTangent tangent;
    ImmersionTangent normal;
};

struct TangentNormalSplit {
    /// m with tangential part m * d(theta)c.
    PeriodicScalarField tangential_coeff;
    /// <h, n>.
    PeriodicScalarField normal_coeff;
};

// ---- periodic grid calculus -------------------------------------------------

/// Fourth-order central difference in theta.
PeriodicScalarField deriv_theta(const PeriodicScalarField& u);
/// Componentwise fourth-order central difference of a vector sequence.
Points deriv_theta(const Points& points);

// ---- curve geometry ---------------------------------------------------------

/// d(theta)c, projected onto the sphere tangent plane on the sphere.
ImmersionTangent velocity(const DiscreteImmersion& c);
PeriodicScalarField speed(const DiscreteImmersion& c);
Frame frame(const DiscreteImmersion& c);
PeriodicScalarField arclen_deriv(const DiscreteImmersion& c, const PeriodicScalarField& u);
/// Componentwise D_s of ambient vectors; no tangent projection.
Points arclen_deriv(const DiscreteImmersion& c, const Points& vectors);
/// Signed (geodesic) curvature <D_s v, n>.
PeriodicScalarField curvature(const DiscreteImmersion& c);
TangentNormalSplit split_tangent_normal(const DiscreteImmersion& c, const ImmersionTangent& h);
ImmersionTangent recombine(const DiscreteImmersion& c, const TangentNormalSplit& split);

/// Band-limited random field at c: each ambient component is a random
/// trigonometric polynomial of degree `modes`, then projected to the tangent space.
ImmersionTangent random_tangent(const DiscreteImmersion& c, std::uint64_t seed, int modes);

// ---- curve generators -------------------------------------------------------

DiscreteImmersion circle(std::size_t n, double radius = 1.0);
DiscreteImmersion ellipse(std::size_t n, double semi_x, double semi_y);
/// Unit circle plus a random trigonometric perturbation with coefficient
/// magnitudes amplitude * k^(-decay), k = 1..modes. The amplitude is halved
/// until the minimum speed is at least 0.1.
DiscreteImmersion random_fourier_curve(std::uint64_t seed, std::size_t n, int modes, double decay,
                                       double amplitude = 0.3);
/// The equator (cos t, sin t, 0).
DiscreteImmersion great_circle(std::size_t n);
/// Latitude circle at height z, |z| < 1.
DiscreteImmersion small_circle(std::size_t n, double height);
/// The equator displaced in z by amplitude * sin(wave * t), retracted to the sphere.
DiscreteImmersion sphere_wave(std::size_t n, double amplitude, int wave);

/// Uniform doubles in [-1, 1) built from the raw mt19937_64 stream, so the
/// sequence is identical across standard libraries.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed)
        : engine_(seed)
    {
    }
    double next();

private:
    std::mt19937_64 engine_;
};

} // namespace norbrack
