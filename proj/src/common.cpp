#include "symcurv/errors.hpp"
#include "symcurv/tolerance.hpp"

#include <atomic>

namespace symcurv {

namespace {
std::atomic<double> g_eps{1e-9};
}

double eps() { return g_eps.load(std::memory_order_relaxed); }

void set_eps(double value) {
  if (!(value > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  g_eps.store(value, std::memory_order_relaxed);
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSkew: return "NotSkew";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::NotCartanPair: return "NotCartanPair";
    case ErrorKind::MetricNotInvariant: return "MetricNotInvariant";
    case ErrorKind::ContainmentViolated: return "ContainmentViolated";
    case ErrorKind::UnknownSpace: return "UnknownSpace";
    case ErrorKind::SourceMismatch: return "SourceMismatch";
    case ErrorKind::UnsupportedDim: return "UnsupportedDim";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::KernelNotIncluded: return "KernelNotIncluded";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::UnsupportedBase: return "UnsupportedBase";
    case ErrorKind::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace symcurv
