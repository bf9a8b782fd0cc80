#pragma once

#include <stdexcept>
#include <string>

namespace rkb {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define RKB_ERROR(Name)                         \
    class Name : public Error {                 \
    public:                                     \
        using Error::Error;                     \
    }

RKB_ERROR(DomainError);
RKB_ERROR(SingularityError);
RKB_ERROR(EnergyMismatch);
RKB_ERROR(AntipodalEndpoints);
RKB_ERROR(WindingChanged);
RKB_ERROR(DegenerateEllipse);
RKB_ERROR(OutOfActionRange);
RKB_ERROR(NoFixedPoint);
RKB_ERROR(RangeEmpty);
RKB_ERROR(DescentStalled);
RKB_ERROR(QuadratureTolUnmet);
RKB_ERROR(DegenerateStationarity);
RKB_ERROR(NoIntermediatePoint);
RKB_ERROR(InsufficientLength);
RKB_ERROR(ResidualTooLarge);
RKB_ERROR(OrbitTerminated);
RKB_ERROR(DegenerateEnvelope);
RKB_ERROR(ConfigError);
RKB_ERROR(EventDetectionFailed);
RKB_ERROR(TangentialCrossing);

#undef RKB_ERROR

class ShootingDiverged : public Error {
public:
    ShootingDiverged(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
    double residual() const { return residual_; }
private:
    double residual_;
};

class NewtonDiverged : public Error {
public:
    NewtonDiverged(const std::string& what, double zeta)
        : Error(what + " at zeta=" + std::to_string(zeta)), zeta_(zeta) {}
    double zeta() const { return zeta_; }
private:
    double zeta_;
};

// inner incidence beyond the critical angle; the orbit cannot continue
class TotalReflectionTermination : public Error {
public:
    TotalReflectionTermination(double beta, double alpha_crit)
        : Error("total reflection: beta=" + std::to_string(beta) +
                " exceeds critical angle " + std::to_string(alpha_crit)),
          beta_(beta) {}
    double beta() const { return beta_; }
private:
    double beta_;
};

}  // namespace rkb
