#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ca {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace ca
