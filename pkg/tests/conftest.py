from hypothesis import settings

# First calls into numba kernels pay JIT compilation time.
settings.register_profile("jit", deadline=None)
settings.load_profile("jit")
