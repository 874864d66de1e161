#ifndef DISTCOV_VERSION_HPP
#define DISTCOV_VERSION_HPP

namespace distcov {

inline constexpr const char* kVersion = "0.1.0";

} // namespace distcov

#endif
