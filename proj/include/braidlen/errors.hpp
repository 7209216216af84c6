#pragma once

#include <stdexcept>
#include <string>

namespace braidlen {

// Every failure raised by the library derives from one of the two standard
// bases, so callers can catch broadly or by kind.

class invalid_strand_count : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class invalid_letter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class incompatible_words : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class invalid_canonical_form : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class malformed_key : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class subgroup_violation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class empty_instance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class arithmetic_overflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace braidlen
