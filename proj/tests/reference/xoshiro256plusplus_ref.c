/*  Written in 2019 by David Blackman and Sebastiano Vigna (vigna@acm.org)

To the extent possible under law, the author has dedicated all copyright
and related and neighboring rights to this software to the public domain
worldwide.

Permission to use, copy, modify, and/or distribute this software for any
purpose with or without fee is hereby granted.

Reference xoshiro256++ 1.0 and splitmix64, reproduced for test-vector
generation. The driver at the bottom prints, for each seed given on the
command line, the seeded state followed by the first N outputs and the state
after one jump(). */

#include <inttypes.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

static uint64_t sm_x;

static uint64_t splitmix64_next(void) {
	uint64_t z = (sm_x += 0x9e3779b97f4a7c15);
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
	z = (z ^ (z >> 27)) * 0x94d049bb133111eb;
	return z ^ (z >> 31);
}

static inline uint64_t rotl(const uint64_t x, int k) {
	return (x << k) | (x >> (64 - k));
}

static uint64_t s[4];

uint64_t next(void) {
	const uint64_t result = rotl(s[0] + s[3], 23) + s[0];

	const uint64_t t = s[1] << 17;

	s[2] ^= s[0];
	s[3] ^= s[1];
	s[1] ^= s[2];
	s[0] ^= s[3];

	s[2] ^= t;

	s[3] = rotl(s[3], 45);

	return result;
}

void jump(void) {
	static const uint64_t JUMP[] = { 0x180ec6d33cfd0aba, 0xd5a61266f0c9392c, 0xa9582618e03fc9aa, 0x39abdc4529b1661c };

	uint64_t s0 = 0;
	uint64_t s1 = 0;
	uint64_t s2 = 0;
	uint64_t s3 = 0;
	for(int i = 0; i < (int)(sizeof JUMP / sizeof *JUMP); i++)
		for(int b = 0; b < 64; b++) {
			if (JUMP[i] & UINT64_C(1) << b) {
				s0 ^= s[0];
				s1 ^= s[1];
				s2 ^= s[2];
				s3 ^= s[3];
			}
			next();	
		}
		
	s[0] = s0;
	s[1] = s1;
	s[2] = s2;
	s[3] = s3;
}

void long_jump(void) {
	static const uint64_t LONG_JUMP[] = { 0x76e15d3efefdcbbf, 0xc5004e441c522fb3, 0x77710069854ee241, 0x39109bb02acbe635 };

	uint64_t s0 = 0;
	uint64_t s1 = 0;
	uint64_t s2 = 0;
	uint64_t s3 = 0;
	for(int i = 0; i < (int)(sizeof LONG_JUMP / sizeof *LONG_JUMP); i++)
		for(int b = 0; b < 64; b++) {
			if (LONG_JUMP[i] & UINT64_C(1) << b) {
				s0 ^= s[0];
				s1 ^= s[1];
				s2 ^= s[2];
				s3 ^= s[3];
			}
			next();	
		}
		
	s[0] = s0;
	s[1] = s1;
	s[2] = s2;
	s[3] = s3;
}

/* Output format, one block per seed:
     seed <decimal seed>
     state <hex s0> <hex s1> <hex s2> <hex s3>
     <N lines, one hex output each>
     jumped <hex s0> <hex s1> <hex s2> <hex s3>   (jump applied to the seeded state)
     longjumped <hex s0> <hex s1> <hex s2> <hex s3>   (long_jump applied to the seeded state)
*/
int main(int argc, char** argv) {
	if (argc < 3) {
		fprintf(stderr, "usage: %s N seed...\n", argv[0]);
		return 2;
	}
	const int n = atoi(argv[1]);
	for (int a = 2; a < argc; a++) {
		const uint64_t seed = strtoull(argv[a], NULL, 10);
		sm_x = seed;
		for (int k = 0; k < 4; k++) s[k] = splitmix64_next();
		const uint64_t saved[4] = { s[0], s[1], s[2], s[3] };
		printf("seed %" PRIu64 "\n", seed);
		printf("state %016" PRIx64 " %016" PRIx64 " %016" PRIx64 " %016" PRIx64 "\n", s[0], s[1], s[2], s[3]);
		for (int i = 0; i < n; i++) printf("%016" PRIx64 "\n", next());
		for (int k = 0; k < 4; k++) s[k] = saved[k];
		jump();
		printf("jumped %016" PRIx64 " %016" PRIx64 " %016" PRIx64 " %016" PRIx64 "\n", s[0], s[1], s[2], s[3]);
		for (int k = 0; k < 4; k++) s[k] = saved[k];
		long_jump();
		printf("longjumped %016" PRIx64 " %016" PRIx64 " %016" PRIx64 " %016" PRIx64 "\n", s[0], s[1], s[2], s[3]);
	}
	return 0;
}
