#include "prefkb/value.hpp"

namespace prefkb {

std::string Value::to_string() const {
  switch (kind) {
    case ValueKind::Individual:
      return text;
    case ValueKind::Integer:
      return std::to_string(number);
    case ValueKind::String: {
      std::string out = "\"";
      for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      return out + '"';
    }
  }
  return text;
}

}  // namespace prefkb
