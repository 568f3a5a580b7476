#include "randfeat/distributions.hpp"

#include <cassert>
#include <cmath>

#include "randfeat/errors.hpp"

namespace randfeat {

double student_t_log_norm(int m) {
    return std::lgamma(0.5 * (m + 1)) - 0.5 * (m + 1) * std::log(M_PI);
}

InitDistribution InitDistribution::student_t(int m) {
    return InitDistribution(DistributionKind::StudentT, m, 1.0);
}

InitDistribution InitDistribution::student_t_pair(int m) {
    return InitDistribution(DistributionKind::StudentTPair, m + 1, 1.0);
}

InitDistribution InitDistribution::gaussian(int m, double sigma) {
    assert(sigma > 0.0);
    return InitDistribution(DistributionKind::Gaussian, m, sigma);
}

InitDistribution InitDistribution::custom_density(
    int dim, std::function<double(const Eigen::VectorXd&)> pdf) {
    InitDistribution d(DistributionKind::CustomDensity, dim, 1.0);
    d.custom_pdf_ = std::move(pdf);
    return d;
}

std::string InitDistribution::name() const {
    switch (kind_) {
        case DistributionKind::StudentT: return "student_t(" + std::to_string(dim_) + ")";
        case DistributionKind::StudentTPair:
            return "student_t(" + std::to_string(dim_ - 1) + ")xstudent_t(1)";
        case DistributionKind::Gaussian:
            return "gaussian(" + std::to_string(dim_) + ")";
        case DistributionKind::CustomDensity: return "custom";
    }
    return "?";
}

namespace {

double student_t_pdf(int m, double squared_norm) {
    return std::exp(student_t_log_norm(m) - 0.5 * (m + 1) * std::log1p(squared_norm));
}

}  // namespace

double InitDistribution::pdf(const Eigen::VectorXd& x) const {
    assert(x.size() == dim_);
    switch (kind_) {
        case DistributionKind::StudentT:
            return student_t_pdf(dim_, x.squaredNorm());
        case DistributionKind::StudentTPair: {
            const int m = dim_ - 1;
            return student_t_pdf(m, x.head(m).squaredNorm()) *
                   student_t_pdf(1, x[m] * x[m]);
        }
        case DistributionKind::Gaussian: {
            const double s2 = sigma_ * sigma_;
            return std::exp(-0.5 * x.squaredNorm() / s2) /
                   std::pow(2.0 * M_PI * s2, 0.5 * dim_);
        }
        case DistributionKind::CustomDensity:
            return custom_pdf_(x);
    }
    return 0.0;
}

Eigen::VectorXd InitDistribution::sample(SeededStream& stream) const {
    switch (kind_) {
        case DistributionKind::StudentT: {
            Eigen::VectorXd z = stream.normal_vector(dim_);
            const double g = stream.next_normal();
            return z / std::abs(g);
        }
        case DistributionKind::StudentTPair: {
            const int m = dim_ - 1;
            Eigen::VectorXd x(dim_);
            x.head(m) = stream.normal_vector(m) / std::abs(stream.next_normal());
            x[m] = stream.next_normal() / std::abs(stream.next_normal());
            return x;
        }
        case DistributionKind::Gaussian:
            return sigma_ * stream.normal_vector(dim_);
        case DistributionKind::CustomDensity:
            throw InvalidTarget("custom_density distributions provide a pdf only");
    }
    return {};
}

Eigen::MatrixXd InitDistribution::sample(SeededStream& stream, int n) const {
    Eigen::MatrixXd out(dim_, n);
    for (int i = 0; i < n; ++i) out.col(i) = sample(stream);
    return out;
}

Eigen::MatrixXd sample_student_t(int m, SeededStream& stream, int n) {
    return InitDistribution::student_t(m).sample(stream, n);
}

Eigen::MatrixXd sample_gaussian_weight(int m, SeededStream& stream, int n) {
    return InitDistribution::gaussian(m).sample(stream, n);
}

}  // namespace randfeat
