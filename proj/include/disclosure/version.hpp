#ifndef DISCLOSURE_VERSION_HPP_
#define DISCLOSURE_VERSION_HPP_

namespace disclosure {
inline constexpr const char* kVersion = "1.0.0";
}

#endif  // DISCLOSURE_VERSION_HPP_
