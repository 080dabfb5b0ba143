#include "subseg/token.hpp"

namespace subseg {

std::string render_split(const Split& split) {
  std::string out;
  for (std::size_t i = 0; i < split.size(); ++i) {
    if (i) out += ' ';
    out += split[i].text;
    if (!split[i].word_final) out += kContinuationMarker;
  }
  return out;
}

}  // namespace subseg
