#include "igbounds/oracle.hpp"

namespace igbounds {

std::string_view method_name(OracleMethod m) {
  switch (m) {
    case OracleMethod::ContinuedFraction: return "ContinuedFraction";
    case OracleMethod::SeriesComplement: return "SeriesComplement";
    case OracleMethod::Quadrature: return "Quadrature";
    case OracleMethod::BackwardRecursed: return "BackwardRecursed";
  }
  return "?";
}

}  // namespace igbounds
