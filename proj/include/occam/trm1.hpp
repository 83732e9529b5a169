#pragma once

// TRM-1: a small monotone machine. The program is a stream of 3-bit opcodes
// read strictly left to right; the output tape is write-once, left to right.
//
//   000 OUT0   write 0
//   001 OUT1   write 1
//   010 CPY    write the side-tape bit under the head, move head right
//   011 LEFT   move side head left (no-op at the left end)
//   100 RIGHT  move side head right
//   101 LOOP   jump back to the first instruction already read; no new
//              program bits are consumed
//   110 SKIP   if the side bit under the head is 1, skip the next instruction
//              (reading it from the program if it has not been read yet)
//   111 HALT   stop
//
// The side tape is the side string followed by infinitely many 0s; its head
// starts on the first cell. Every executed instruction costs one step. The
// machine is monotone: behaviour depends only on the program bits read so
// far, so extending a program can only extend its output.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "occam/bits.hpp"

namespace occam::tinyref {

enum class Op : std::uint8_t { out0 = 0, out1, cpy, left, right, loop, skip, halt };

inline constexpr unsigned kOpcodeBits = 3;
inline constexpr unsigned kOpcodeCount = 8;

enum class StopReason { halted, exhausted, budget, output_limit };

class Machine {
 public:
  enum class Status { needs_input, halted, budget, output_limit };

  // `side` must outlive the machine and all of its copies.
  Machine(std::span<const std::uint8_t> side, std::uint64_t max_steps,
          std::size_t output_limit = std::numeric_limits<std::size_t>::max());

  // Executes until the machine halts, needs its next instruction, exhausts
  // the step budget, or has written output_limit bits.
  Status run();
  // Supplies the next program instruction. Only valid after run() returned
  // needs_input.
  void feed(Op op);

  [[nodiscard]] const BitString& output() const noexcept { return output_; }
  [[nodiscard]] std::size_t consumed_bits() const noexcept { return ops_.size() * kOpcodeBits; }
  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }

 private:
  [[nodiscard]] std::uint8_t side_bit() const noexcept { return head_ < side_.size() ? side_[head_] : 0; }

  std::span<const std::uint8_t> side_;
  std::uint64_t max_steps_;
  std::size_t output_limit_;
  std::vector<Op> ops_;
  std::size_t ip_ = 0;
  std::size_t head_ = 0;
  std::uint64_t steps_ = 0;
  bool halted_ = false;
  bool skip_pending_ = false;
  BitString output_;
};

struct ProgramRun {
  BitString program;
  BitString output;
  std::size_t consumed = 0;
  bool halted = false;
  std::uint64_t steps = 0;
  StopReason reason = StopReason::exhausted;
};

// Runs `program` with the given side tape. Stops on HALT, on an attempt to
// read past the last complete opcode, or when max_steps instructions have
// executed. Throws invalid_budget if max_steps is 0.
[[nodiscard]] ProgramRun run_trm1(const BitString& program, const BitString& side, std::uint64_t max_steps);

// Opcode sequence to bit string, e.g. {Op::out0, Op::halt} -> 000111.
[[nodiscard]] BitString assemble(std::span<const Op> ops);

}  // namespace occam::tinyref
