#include "occam/trm1.hpp"

#include "occam/error.hpp"

namespace occam::tinyref {

Machine::Machine(std::span<const std::uint8_t> side, std::uint64_t max_steps, std::size_t output_limit)
    : side_(side), max_steps_(max_steps), output_limit_(output_limit) {}

Machine::Status Machine::run() {
  for (;;) {
    if (halted_) return Status::halted;
    if (output_.size() >= output_limit_) return Status::output_limit;
    if (steps_ >= max_steps_) return Status::budget;
    if (ip_ >= ops_.size()) return Status::needs_input;

    ++steps_;
    switch (ops_[ip_]) {
      case Op::out0:
        output_.push_back(false);
        ++ip_;
        break;
      case Op::out1:
        output_.push_back(true);
        ++ip_;
        break;
      case Op::cpy:
        output_.push_back(side_bit() != 0);
        ++head_;
        ++ip_;
        break;
      case Op::left:
        if (head_ > 0) --head_;
        ++ip_;
        break;
      case Op::right:
        ++head_;
        ++ip_;
        break;
      case Op::loop:
        ip_ = 0;
        break;
      case Op::skip:
        if (side_bit() == 0) {
          ++ip_;
        } else if (ip_ + 1 < ops_.size()) {
          ip_ += 2;
        } else {
          // The skipped instruction has not been read yet.
          ip_ = ops_.size();
          skip_pending_ = true;
        }
        break;
      case Op::halt:
        halted_ = true;
        break;
    }
  }
}

void Machine::feed(Op op) {
  ops_.push_back(op);
  if (skip_pending_) {
    skip_pending_ = false;
    ip_ = ops_.size();
  }
}

ProgramRun run_trm1(const BitString& program, const BitString& side, std::uint64_t max_steps) {
  if (max_steps == 0) throw error(errc::invalid_budget, "step budget must be at least 1");
  Machine machine(side.raw(), max_steps);
  std::size_t pos = 0;
  ProgramRun run;
  run.program = program;
  for (;;) {
    const auto status = machine.run();
    if (status == Machine::Status::needs_input) {
      if (pos + kOpcodeBits > program.size()) {
        run.reason = StopReason::exhausted;
        break;
      }
      const unsigned code = (program[pos] << 2) | (program[pos + 1] << 1) | program[pos + 2];
      pos += kOpcodeBits;
      machine.feed(static_cast<Op>(code));
      continue;
    }
    run.reason = status == Machine::Status::halted ? StopReason::halted : StopReason::budget;
    run.halted = status == Machine::Status::halted;
    break;
  }
  run.output = machine.output();
  run.consumed = machine.consumed_bits();
  run.steps = machine.steps();
  return run;
}

BitString assemble(std::span<const Op> ops) {
  BitString bits;
  for (auto op : ops) bits.append(BitString::from_value(static_cast<unsigned>(op), kOpcodeBits));
  return bits;
}

}  // namespace occam::tinyref
