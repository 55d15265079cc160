#pragma once

namespace brex {

/// Real branches of the Lambert W function.
enum class LambertBranch { Principal = 0, Lower = -1 };

/// Solves w * exp(w) = z.
///   Principal: z >= -1/e, w >= -1.
///   Lower:     -1/e <= z < 0, w <= -1.
/// Throws DomainError outside these ranges.
double lambert_w(LambertBranch branch, double z);

/// Lower branch evaluated from log(-z), for arguments too close to 0- to be
/// represented directly. Requires log_neg_z <= -1.
double lambert_wm1_from_log(double log_neg_z);

}  // namespace brex
