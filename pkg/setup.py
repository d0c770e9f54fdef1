from setuptools import Extension, setup

ext = Extension(
    "vekua_ohm._kernels",
    ["src/vekua_ohm/_kernels.pyx"],
    extra_compile_args=["-O3"],
    optional=True,
)

try:
    from Cython.Build import cythonize

    ext_modules = cythonize([ext], compiler_directives={"language_level": "3"})
except Exception:  # no Cython or translation failure: install the pure-Python kernels only
    ext_modules = []

setup(ext_modules=ext_modules)
