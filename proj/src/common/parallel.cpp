#include "qsc/parallel.hpp"

#include <cstdlib>
#include <string>

namespace qsc {

namespace {

int initial_threads()
{
	if (const char* env = std::getenv("QSC_THREADS")) {
		try {
			const int t = std::stoi(env);
			if (t > 0)
				return t;
		} catch (...) {
		}
	}
	const unsigned hw = std::thread::hardware_concurrency();
	return hw ? static_cast<int>(hw) : 1;
}

std::atomic<int> g_threads{0};

} // namespace

int default_threads()
{
	int t = g_threads.load(std::memory_order_relaxed);
	if (t <= 0) {
		t = initial_threads();
		g_threads.store(t, std::memory_order_relaxed);
	}
	return t;
}

void set_default_threads(int threads)
{
	g_threads.store(threads > 0 ? threads : initial_threads(), std::memory_order_relaxed);
}

} // namespace qsc
