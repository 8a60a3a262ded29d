#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fbm {

// Every float the project prints goes through this: 9 significant digits,
// locale-independent.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Minimal streaming JSON emitter. Key order is the caller's responsibility;
// summaries insert keys alphabetically so documents diff cleanly.
class JsonWriter {
public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}

  JsonWriter& begin_object() {
    separate();
    out_ << '{';
    stack_.push_back(false);
    return *this;
  }

  JsonWriter& end_object() {
    out_ << '}';
    stack_.pop_back();
    mark_value();
    return *this;
  }

  JsonWriter& begin_array() {
    separate();
    out_ << '[';
    stack_.push_back(false);
    return *this;
  }

  JsonWriter& end_array() {
    out_ << ']';
    stack_.pop_back();
    mark_value();
    return *this;
  }

  JsonWriter& key(std::string_view name) {
    separate();
    write_string(name);
    out_ << ": ";
    pending_key_ = true;
    return *this;
  }

  JsonWriter& value(double v) {
    separate();
    out_ << format_double(v);
    mark_value();
    return *this;
  }

  JsonWriter& value(std::int64_t v) {
    separate();
    out_ << v;
    mark_value();
    return *this;
  }

  JsonWriter& value(std::uint64_t v) {
    separate();
    out_ << v;
    mark_value();
    return *this;
  }

  JsonWriter& value(bool v) {
    separate();
    out_ << (v ? "true" : "false");
    mark_value();
    return *this;
  }

  JsonWriter& value(std::string_view v) {
    separate();
    write_string(v);
    mark_value();
    return *this;
  }

private:
  void separate() {
    if (pending_key_) {
      pending_key_ = false;
      return;
    }
    if (!stack_.empty() && stack_.back()) out_ << ", ";
  }

  void mark_value() {
    if (!stack_.empty()) stack_.back() = true;
  }

  void write_string(std::string_view s) {
    out_ << '"';
    for (const char c : s) {
      switch (c) {
        case '"': out_ << "\\\""; break;
        case '\\': out_ << "\\\\"; break;
        case '\n': out_ << "\\n"; break;
        case '\t': out_ << "\\t"; break;
        default: out_ << c;
      }
    }
    out_ << '"';
  }

  std::ostream& out_;
  std::vector<bool> stack_;
  bool pending_key_ = false;
};

}  // namespace fbm
