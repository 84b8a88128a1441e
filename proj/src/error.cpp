#include "rwcds/error.hpp"

namespace rwcds {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::FailsConnectivity: return "FAILS_CONNECTIVITY";
    case Errc::UnknownNode: return "UNKNOWN_NODE";
    case Errc::PartialAssignment: return "PARTIAL_ASSIGNMENT";
    case Errc::MalformedTree: return "MALFORMED_TREE";
    case Errc::NumericalFailure: return "NUMERICAL_FAILURE";
    case Errc::InvalidAssignment: return "INVALID_ASSIGNMENT";
    case Errc::TooLarge: return "TOO_LARGE";
    case Errc::InfeasibleFixed: return "INFEASIBLE_FIXED";
    case Errc::Disconnected: return "DISCONNECTED";
    case Errc::NoChannels: return "NO_CHANNELS";
    case Errc::EmptyTable: return "EMPTY_TABLE";
    case Errc::IoError: return "IO_ERROR";
    case Errc::ConfigError: return "CONFIG_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace rwcds
