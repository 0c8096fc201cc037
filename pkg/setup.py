#!/usr/bin/env python3
"""
Setup script for pd-schauder
"""

from setuptools import setup, find_packages


def read_readme():
    with open("README.md", "r", encoding="utf-8") as fh:
        return fh.read()


def read_requirements():
    skip = ("pytest", "black", "flake8", "mypy")
    with open("requirements.txt", "r", encoding="utf-8") as fh:
        lines = [line.strip() for line in fh if line.strip() and not line.startswith("#")]
    return [line for line in lines if not line.startswith(skip)]


setup(
    name="pd-schauder",
    version="0.1.0",
    description="Schauder-basis vectorization of signed persistence diagrams on polyhedral pairs",
    long_description=read_readme(),
    long_description_content_type="text/markdown",
    packages=find_packages(include=["src", "src.*"]),
    py_modules=["main"],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.10",
    install_requires=read_requirements(),
    extras_require={
        "dev": [
            "pytest>=8.3.0",
            "black>=24.0.0",
            "flake8>=7.0.0",
            "mypy>=1.13.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "pd-schauder=main:main",
        ],
    },
    include_package_data=True,
    zip_safe=False,
    keywords="persistence diagrams topological data analysis schauder basis wasserstein vectorization",
)
