#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hpclab {

enum class Player : std::uint8_t { A, B, C, D };
enum class PairTag : std::uint8_t { AB, CD };

char player_name(Player p);
Player parse_player(char c);
PairTag pair_of(Player p);
const char* pair_name(PairTag t);

struct Message {
  int phase = 0;  // 1-based; phase 0 is reserved for two-party prologue traffic
  PairTag pair = PairTag::AB;
  Player from = Player::A;
  Player to = Player::B;
  std::string bits;  // "0"/"1" characters; may be empty (framing-only message)
  bool boundary = false;
};

// A four-party transcript split into phases. Odd phases belong to the CD
// pair and even phases to the AB pair; a phase ends exactly when a message
// crosses to the other pair. Phases with no messages are legal ("skipped").
struct PhaseTranscript {
  int phase_count = 0;
  std::vector<Message> messages;

  std::uint64_t total_bits() const;
  int messages_in_phase(int phase) const;
};

// Checks the phase discipline: grouped, alternating pair tags starting with
// CD, senders inside the owning pair, exactly the final message of every
// non-empty phase crossing pairs. Returns a description of the first
// violation, or nothing if the transcript is well-formed.
std::optional<std::string> phase_violation(const PhaseTranscript& t);

std::string to_text(const PhaseTranscript& t);
PhaseTranscript parse_transcript(const std::string& text);

}  // namespace hpclab
