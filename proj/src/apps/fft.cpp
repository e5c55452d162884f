/*
 *   Copyright 2026 The TREES Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "trees/apps.hpp"
#include "trees/error.hpp"

namespace trees::apps {

std::vector<std::complex<double>> unpack_complex(std::span<const double> interleaved) {
  std::vector<std::complex<double>> out(interleaved.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = {interleaved[2 * i], interleaved[2 * i + 1]};
  }
  return out;
}

// Recursive radix-2 decimation in time. fft(in, stride, n, out) transforms the
// n inputs in[in + k*stride] into out[out .. out+n): the even half lands in
// the lower half of the output, the odd half in the upper, and the combine
// continuation applies the butterflies in place.
Program fft_program(std::span<const std::complex<double>> x) {
  const std::size_t n = x.size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw Error(ErrorCode::config, "fft: length must be a power of two, got " + std::to_string(n));
  }
  std::vector<double> in(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    in[2 * i] = x[i].real();
    in[2 * i + 1] = x[i].imag();
  }

  ProgramBuilder b;
  auto& arena = b.arena();
  const BufferId input = arena.add_reals("input", std::move(in));
  const BufferId output = arena.add_reals("output", std::vector<double>(2 * n, 0.0));

  auto& reg = b.registry();
  const TaskTypeId fft = reg.declare_task("fft");
  const TaskTypeId combine = reg.declare_task("combine");

  reg.define_task(fft, [=](TaskContext& ctx) {
    const Word in_at = ctx.arg(0);
    const Word stride = ctx.arg(1);
    const Word len = ctx.arg(2);
    const Word out_at = ctx.arg(3);
    if (len == 1) {
      Arena& a = ctx.arena();
      const auto src = a.reals(input);
      auto dst = a.reals(output);
      dst[2 * out_at] = src[2 * in_at];
      dst[2 * out_at + 1] = src[2 * in_at + 1];
      return;
    }
    const Word half = len / 2;
    ctx.fork(fft, {in_at + stride, 2 * stride, half, out_at + half});
    ctx.fork(fft, {in_at, 2 * stride, half, out_at});
    ctx.join(combine, {out_at, len});
  });

  reg.define_task(combine, [=](TaskContext& ctx) {
    const Word at = ctx.arg(0);
    const Word len = ctx.arg(1);
    const Word half = len / 2;
    auto out = ctx.arena().reals(output);
    for (Word k = 0; k < half; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
      const std::complex<double> twiddle = std::polar(1.0, angle);
      const std::size_t ie = 2 * static_cast<std::size_t>(at + k);
      const std::size_t io = 2 * static_cast<std::size_t>(at + k + half);
      const std::complex<double> even{out[ie], out[ie + 1]};
      const std::complex<double> odd = twiddle * std::complex<double>{out[io], out[io + 1]};
      const std::complex<double> lo = even + odd;
      const std::complex<double> hi = even - odd;
      out[ie] = lo.real();
      out[ie + 1] = lo.imag();
      out[io] = hi.real();
      out[io + 1] = hi.imag();
    }
  });

  b.root(fft, {0, 1, static_cast<Word>(n), 0});
  b.extractor([=](const Arena& a, const RuntimeState&) {
    ProgramOutput r;
    const auto out = a.reals(output);
    r.reals.assign(out.begin(), out.end());
    std::ostringstream text;
    text.precision(17);
    for (std::size_t i = 0; i < n; ++i) {
      text << (i ? " " : "") << out[2 * i] << (out[2 * i + 1] < 0 ? "" : "+") << out[2 * i + 1]
           << "i";
    }
    r.text = text.str();
    return r;
  });
  return std::move(b).build();
}

}  // namespace trees::apps
