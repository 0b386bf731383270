import java.util.*;

public class Main {
  public static int solve(int[] a, int k) {
    int m=a.length;
    int ops=0;
    while (m > 0) {
      m/=2;
      ops+=1;
    }
    int mx=a[0];
    for (int w : a) {
      if (w>mx)
        mx=w;
    }
    return ops + mx;
  }

  public static void main(String[] args) {
    Scanner sc = new Scanner(System.in);
    int n = sc.nextInt();
    int k = sc.nextInt();
    int[] a = new int[n];
    for (int q = 0; q < n; q++) a[q] = sc.nextInt();
    System.out.println(solve(a, k));
  }
}
