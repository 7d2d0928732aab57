"""Day-level multimodal transport planning for care-access nonprofits.

Routes daily demand from origin counties to destination clinics over a
three-leg network (ground access, flights, ground egress) and answers two
questions exactly: how many people can be moved within today's resources
(maximum throughput), and what is the cheapest way to move everyone
(minimum cost).
"""

__version__ = "0.1.0"
