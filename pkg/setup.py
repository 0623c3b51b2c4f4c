from setuptools import Extension, setup

# The modular elimination kernel is compiled when Cython and a C compiler
# are around; the package falls back to the numpy implementation otherwise.
try:
    from Cython.Build import cythonize
    import numpy

    extensions = cythonize(
        [
            Extension(
                "polarsimplex._modpx",
                ["src/polarsimplex/_modpx.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
