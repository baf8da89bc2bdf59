"""
Setup script for ncpoisson
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

with open("requirements.txt", "r", encoding="utf-8") as fh:
    requirements = [line.strip() for line in fh if line.strip() and not line.startswith("#")]

setup(
    name="ncpoisson",
    version="0.1.0",
    description="Exact computations in non-commutative Poisson algebras",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["ncpoisson", "ncpoisson.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.10",
    install_requires=requirements,
    extras_require={"dev": ["pytest==7.4.3"]},
    entry_points={
        "console_scripts": [
            "ncpoisson=ncpoisson.cli.main:app",
        ],
    },
    include_package_data=True,
    zip_safe=False,
)
