#ifndef WORMA_UTIL_H
#define WORMA_UTIL_H

int net_connect(char *host, int port);
void net_close(int sock);
int window_title(char *out, int cap);

#endif
