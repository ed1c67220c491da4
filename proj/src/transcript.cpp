#include "hpclab/transcript.hpp"

#include <sstream>
#include <stdexcept>

namespace hpclab {

char player_name(Player p) {
  switch (p) {
    case Player::A: return 'A';
    case Player::B: return 'B';
    case Player::C: return 'C';
    default: return 'D';
  }
}

Player parse_player(char c) {
  switch (c) {
    case 'A': return Player::A;
    case 'B': return Player::B;
    case 'C': return Player::C;
    case 'D': return Player::D;
    default: throw std::invalid_argument(std::string("unknown player '") + c + "'");
  }
}

PairTag pair_of(Player p) { return (p == Player::A || p == Player::B) ? PairTag::AB : PairTag::CD; }

const char* pair_name(PairTag t) { return t == PairTag::AB ? "AB" : "CD"; }

std::uint64_t PhaseTranscript::total_bits() const {
  std::uint64_t sum = 0;
  for (const auto& m : messages) sum += m.bits.size();
  return sum;
}

int PhaseTranscript::messages_in_phase(int phase) const {
  int cnt = 0;
  for (const auto& m : messages)
    if (m.phase == phase) ++cnt;
  return cnt;
}

std::optional<std::string> phase_violation(const PhaseTranscript& t) {
  int prev_phase = 0;
  for (std::size_t idx = 0; idx < t.messages.size(); ++idx) {
    const Message& m = t.messages[idx];
    if (m.phase < 1 || m.phase > t.phase_count)
      return "message " + std::to_string(idx) + " has phase outside 1.." + std::to_string(t.phase_count);
    if (m.phase < prev_phase) return "messages are not grouped by phase";
    prev_phase = m.phase;

    PairTag expected = (m.phase % 2 == 1) ? PairTag::CD : PairTag::AB;
    if (m.pair != expected)
      return "phase " + std::to_string(m.phase) + " tagged " + pair_name(m.pair) + ", expected " +
             pair_name(expected);
    if (pair_of(m.from) != m.pair)
      return "phase " + std::to_string(m.phase) + ": sender outside the speaking pair";

    bool last_of_phase = idx + 1 == t.messages.size() || t.messages[idx + 1].phase != m.phase;
    bool crosses = pair_of(m.to) != m.pair;
    if (crosses != m.boundary) return "boundary flag disagrees with recipient pair";
    if (crosses && !last_of_phase)
      return "phase " + std::to_string(m.phase) + " continues after a cross-pair message";
    if (!crosses && last_of_phase && m.phase != t.phase_count)
      return "phase " + std::to_string(m.phase) + " never crossed to the other pair";
    for (char c : m.bits)
      if (c != '0' && c != '1') return "non-bit payload";
  }
  return std::nullopt;
}

std::string to_text(const PhaseTranscript& t) {
  std::ostringstream os;
  os << "PHASES " << t.phase_count << "\n";
  for (const auto& m : t.messages)
    os << "phase=" << m.phase << " pair=" << pair_name(m.pair) << " from=P" << player_name(m.from)
       << " to=P" << player_name(m.to) << " bits=" << m.bits << "\n";
  return os.str();
}

PhaseTranscript parse_transcript(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  PhaseTranscript t;
  bool saw_header = false;
  auto val = [](const std::string& tok, const char* key) {
    std::string prefix = std::string(key) + "=";
    if (tok.rfind(prefix, 0) != 0) throw std::invalid_argument("expected '" + prefix + "' in: " + tok);
    return tok.substr(prefix.size());
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (!saw_header) {
      std::string tag;
      ls >> tag;
      if (tag != "PHASES") throw std::invalid_argument("transcript must start with a PHASES line");
      ls >> t.phase_count;
      saw_header = true;
      continue;
    }
    std::string ptok, pairtok, fromtok, totok, bitstok;
    ls >> ptok >> pairtok >> fromtok >> totok;
    std::getline(ls, bitstok);  // bits may be empty
    Message m;
    m.phase = std::stoi(val(ptok, "phase"));
    std::string pr = val(pairtok, "pair");
    m.pair = pr == "AB" ? PairTag::AB : PairTag::CD;
    if (pr != "AB" && pr != "CD") throw std::invalid_argument("bad pair tag " + pr);
    std::string f = val(fromtok, "from"), to = val(totok, "to");
    if (f.size() != 2 || f[0] != 'P' || to.size() != 2 || to[0] != 'P')
      throw std::invalid_argument("bad player token");
    m.from = parse_player(f[1]);
    m.to = parse_player(to[1]);
    std::size_t pos = bitstok.find("bits=");
    if (pos == std::string::npos) throw std::invalid_argument("missing bits field");
    m.bits = bitstok.substr(pos + 5);
    m.boundary = pair_of(m.to) != m.pair;
    t.messages.push_back(m);
  }
  if (!saw_header) throw std::invalid_argument("empty transcript text");
  return t;
}

}  // namespace hpclab
