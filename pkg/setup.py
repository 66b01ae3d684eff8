from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; _backend falls back
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("apollonia._kernels", ["src/apollonia/_kernels.pyx"],
                   extra_compile_args=["-O3"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
