from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="django-lfunctions",
    version="0.1.0",
    description="Noncommutative L-functions of sheaves over finite fields as K1 classes, with trace formula checks",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Framework :: Django",
        "Framework :: Django :: 4.2",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    packages=find_packages(exclude=["examples", "examples.*"]),
    package_data={"lfunctions": ["gallery/*.json"]},
    include_package_data=True,
    python_requires=">=3.9",
    install_requires=[
        "Django>=3.2",
        "djangorestframework>=3.12.0",
        "galois>=0.3.0",
        "numpy>=1.21",
        "sympy>=1.9",
    ],
    extras_require={
        "test": [
            "hypothesis>=6.0",
            "pytest>=7.0",
            "pytest-django>=4.5",
        ],
    },
    zip_safe=False,
)
