#ifndef GLAUBER_VERSION_HPP
#define GLAUBER_VERSION_HPP

#define GLAUBER_KIT_VERSION "0.1.0"

#endif  // GLAUBER_VERSION_HPP
