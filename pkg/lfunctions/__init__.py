"""Noncommutative L-functions of sheaves over finite fields"""
