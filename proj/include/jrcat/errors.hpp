#pragma once

#include <stdexcept>
#include <string>

namespace jrcat {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: unknown ids, non-parallel pairs, ill-typed tables.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed bundle file; the message carries the JSON position.
class BundleError : public Error {
 public:
  using Error::Error;
};

/// A structure the library built itself failed a check it must pass.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class NotAFunctor : public Error {
 public:
  using Error::Error;
};

class NotARestrictionFunctor : public Error {
 public:
  using Error::Error;
};

class NotNatural : public Error {
 public:
  using Error::Error;
};

class IncompatibleFamily : public Error {
 public:
  using Error::Error;
};

class UnsplitIdempotent : public Error {
 public:
  using Error::Error;
};

/// Raised by the sheaf-to-presheaf transfer; names the failing family.
class NotASheaf : public Error {
 public:
  using Error::Error;
};

}  // namespace jrcat
