#ifndef QUARTIC_VERSION_HPP
#define QUARTIC_VERSION_HPP

namespace quartic {

/** Library version, embedded in every JSON report ("version" field). */
inline constexpr const char* version_string = "1.0.0";

} // namespace quartic

#endif // QUARTIC_VERSION_HPP
